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

#ifndef PTMX_TESTS_SUPPORT_ORACLES_H_
#define PTMX_TESTS_SUPPORT_ORACLES_H_

// Deliberately naive reference implementations. They share no code with the
// library so agreement is meaningful.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ptmx::oracle {

// Bins ((k-1)/K, k/K] found by linear scan with exact rational comparison.
double Ece(const std::vector<std::pair<double, bool>> &samples, std::size_t k);

// Sort and index; p given as an integer percentage.
double NearestRank(std::vector<double> values, unsigned p);

// Every {i, j} with i != j from a double loop, deduplicated.
std::set<std::pair<std::string, std::string>> AllPairs(const std::vector<std::string> &items);

struct Pred {
  std::string id;
  int cls = 0;  // 0 = negative
  double conf = 0;
  double std = 0;
};

struct Cutoffs {
  double conf = 0;
  double std = 0;
  double min_conf = 0;
  double max_std = 0;
};

// ids kept by conf > cutoff && std < cutoff, scanning with the class map.
std::set<std::string> HighQuality(const std::vector<Pred> &preds,
                                  const std::map<int, Cutoffs> &cutoffs);
std::set<std::string> LowQuality(const std::vector<Pred> &preds,
                                 const std::map<int, Cutoffs> &cutoffs);

// Precision/recall/F1 in percent from counts, 0 for empty denominators.
struct Scores {
  double p = 0, r = 0, f1 = 0;
};
Scores FromCounts(double tp, double fp, double fn);

struct Mention {
  std::string a, b, ptm, pmid;
  bool positive = true;
};

// "low|ptm|high" -> distinct pmids.
std::map<std::string, std::set<std::string>> Triplets(const std::vector<Mention> &mentions);

// Mean and population standard deviation in long double.
std::pair<long double, long double> MeanStd(const std::vector<double> &values);

}  // namespace ptmx::oracle

#endif  // PTMX_TESTS_SUPPORT_ORACLES_H_
