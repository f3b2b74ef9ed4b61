// Copyright 2026 The ptmx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cctype>

#include "command_support.h"
#include "ptmx/errors.h"
#include "ptmx/provenance.h"

namespace ptmx::cli {
namespace {

constexpr const char *kFormats = R"(Formats (UTF-8, LF line ends; lines starting with '#' are headers):
  docs.jsonl        {"pmid","text"}
  mentions.tsv      pmid, start, end, surface, ncbi_id (offsets in code points, end exclusive)
  map.tsv           ncbi_id, accession[,accession...]
  kb.tsv            pmid, accession_a, accession_b, ptm
  stems.tsv         class, stem[,stem...]
  reference.tsv     accession, ptm, accession ('-' marks a missing accession)
  samples .jsonl    {"pmid","a","b","label","split","text","others"}
  normalized .jsonl {"pmid","text","proteins","skipped"}
  inputs .jsonl     {"id","pmid","a","b","text"}; id = pmid:a:b with a < b
  raw .jsonl        {"id","pmid","a","b","per_model":[[7 probs]...]} or {...,"failure":{"model","error"}}
  preds .jsonl      {"id","pmid","a","b","per_model","mean","pred","conf","std"}
  profile .json     {class: {"conf_cutoff","std_cutoff","min_conf","max_std","support"} | null}
  triplets .jsonl   {"a","ptm","b","n_abstracts","pmids","max_conf","min_std"}
  bins.csv          bin_low,bin_high,count,accuracy,confidence
  similarity.csv    pmid,max_similarity,nearest_train_pmid
  common_words.csv  class,rank,word,count
Class order: negative, acetylation, dephosphorylation, deubiquitination, methylation,
phosphorylation, ubiquitination.
Scorer protocol: request {"id","text"}, response {"id","probs":[7]} or {"id","error"};
newline-delimited over a child's stdin/stdout, or a JSON array via POST <url>/score.
Every option can be set through the environment as PTMX_<OPTION>, e.g. PTMX_SEED=7.
Exit status: 0 success, 1 invalid arguments or input, 2 runtime failure.)";

std::string EnvName(const std::string &long_name) {
  std::string env = "PTMX_";
  for (char c : long_name) {
    env += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return env;
}

void BindEnvironment(CLI::App &app) {
  for (CLI::Option *opt : app.get_options()) {
    const auto &names = opt->get_lnames();
    if (names.empty() || names.front() == "help") continue;
    opt->envname(EnvName(names.front()));
  }
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app("PTM protein-protein interaction extraction pipeline", "ptmx");
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(Version()));
  app.footer(kFormats);
  Streams io{out, err};
  std::vector<Command> commands;
  for (Registrar add : {AddBuildDataset, AddTransform, AddScore, AddCalibrate,
                        AddLearnThresholds, AddFilter, AddEvaluate, AddAggregate,
                        AddCompareReference, AddSampleReview, AddServe}) {
    commands.push_back(add(app, io));
    BindEnvironment(*commands.back().app);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  for (Command &cmd : commands) {
    if (!cmd.app->parsed()) continue;
    const std::string name = cmd.app->get_name();
    try {
      cmd.run();
      return kExitOk;
    } catch (const ParseError &e) {
      err << name << ": " << e.what() << '\n';
      return kExitValidation;
    } catch (const ValidationError &e) {
      err << name << ": " << e.what() << '\n';
      return kExitValidation;
    } catch (const UnmappedGeneError &e) {
      err << name << ": " << e.what() << '\n';
      return kExitValidation;
    } catch (const std::exception &e) {
      err << name << ": " << e.what() << '\n';
      return kExitRuntime;
    }
  }
  return kExitValidation;
}

}  // namespace ptmx::cli
