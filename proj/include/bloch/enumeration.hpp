#pragma once

#include <array>
#include <string>
#include <vector>

#include "bloch/ptrans.hpp"

namespace bloch {

using GeneratorPair = std::array<int, 2>;

struct EquivalenceClass {
  GeneratorPair representative{};  ///< lexicographically least member
  int members = 0;
  double total = 0.0;  ///< fine-tolerance signature of the representative
  double joint = 0.0;
  double probability = 0.0;
  std::vector<GeneratorPair> member_pairs;
};

struct ClassTable {
  int n = 0;
  std::vector<TransposeSpec> conditions;
  std::vector<EquivalenceClass> classes;  ///< nontrivial classes, by descending member count then representative
  int trivial_count = 0;                  ///< pairs with probability 1
  int total_pairs = 0;                    ///< C(n^2-1, 2)
};

struct EnumerationOptions {
  double coarse_tol = 1e-5;
  double fine_tol = 1e-8;
  int workers = 1;
  double trivial_tol = 1e-9;      ///< probability >= 1 - trivial_tol counts as trivial
  double membership_tol = 1e-6;   ///< max signature disagreement inside a class
};

/// Sweeps all unordered generator pairs, groups nontrivial ones by their
/// (total area, joint area) signature and re-validates every class at the
/// fine tolerance. Output does not depend on `workers`.
ClassTable enumerate_classes(int n, const std::vector<TransposeSpec>& conditions,
                             const EnumerationOptions& options = {});

std::string class_table_csv(const ClassTable& table);
std::string class_table_json(const ClassTable& table, int indent = 2);

}  // namespace bloch
