#include "bloch/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "bloch/error.hpp"
#include "bloch/regions.hpp"

namespace bloch {

namespace {

struct Signature {
  double total = 0.0;
  double joint = 0.0;
};

Signature signature(int n, const GeneratorPair& p, const std::vector<TransposeSpec>& conditions, double tol) {
  const RegionMeasures m = measure_2d(RegionPredicate::make(SectionSpec::make(n, {p[0], p[1]}), conditions), tol);
  return {m.total, m.joint};
}

// Runs fn(i) for i in [0, count) on `workers` threads; results are written by
// index, so scheduling never affects the output.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Single-linkage grouping over signatures sorted by (total, joint): a new
// group starts whenever total or joint jumps by more than `gap`.
std::vector<std::vector<int>> cluster(const std::vector<Signature>& sig, std::vector<int> idx, double gap) {
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (sig[a].total != sig[b].total) return sig[a].total < sig[b].total;
    if (sig[a].joint != sig[b].joint) return sig[a].joint < sig[b].joint;
    return a < b;
  });
  std::vector<std::vector<int>> by_total;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i == 0 || sig[idx[i]].total - sig[idx[i - 1]].total > gap) by_total.emplace_back();
    by_total.back().push_back(idx[i]);
  }
  std::vector<std::vector<int>> out;
  for (auto& group : by_total) {
    std::sort(group.begin(), group.end(), [&](int a, int b) {
      if (sig[a].joint != sig[b].joint) return sig[a].joint < sig[b].joint;
      return a < b;
    });
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i == 0 || sig[group[i]].joint - sig[group[i - 1]].joint > gap) out.emplace_back();
      out.back().push_back(group[i]);
    }
  }
  for (auto& c : out) std::sort(c.begin(), c.end());
  return out;
}

bool within(const Signature& a, const Signature& b, double tol) {
  return std::abs(a.total - b.total) <= tol && std::abs(a.joint - b.joint) <= tol;
}

}  // namespace

ClassTable enumerate_classes(int n, const std::vector<TransposeSpec>& conditions, const EnumerationOptions& options) {
  if (n != 4 && n != 6 && n != 8 && n != 9 && n != 10) {
    throw InvalidArgument("enumeration supports n in {4, 6, 8, 9, 10}, got " + std::to_string(n));
  }
  if (conditions.empty()) throw InvalidArgument("enumeration needs at least one decomposition");
  for (const TransposeSpec& t : conditions) {
    if (t.dimension() != n) throw InvalidArgument("decomposition " + t.label() + " does not factor n");
  }

  const int g = n * n - 1;
  std::vector<GeneratorPair> pairs;
  for (int a = 1; a <= g; ++a) {
    for (int b = a + 1; b <= g; ++b) pairs.push_back({a, b});
  }

  std::vector<Signature> coarse(pairs.size());
  parallel_for(pairs.size(), options.workers,
               [&](std::size_t i) { coarse[i] = signature(n, pairs[i], conditions, options.coarse_tol); });

  ClassTable table;
  table.n = n;
  table.conditions = conditions;
  table.total_pairs = static_cast<int>(pairs.size());

  std::vector<int> nontrivial;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (coarse[i].joint >= (1.0 - options.trivial_tol) * coarse[i].total) {
      ++table.trivial_count;
    } else {
      nontrivial.push_back(static_cast<int>(i));
    }
  }

  std::vector<std::vector<int>> groups = cluster(coarse, nontrivial, options.coarse_tol);

  // Fine pass on one representative per group (in parallel), then validation.
  std::vector<Signature> rep_fine(groups.size());
  parallel_for(groups.size(), options.workers, [&](std::size_t c) {
    rep_fine[c] = signature(n, pairs[groups[c].front()], conditions, options.fine_tol);
  });

  std::vector<std::pair<std::vector<int>, Signature>> validated;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    const auto& members = groups[c];
    bool ok = true;
    for (int i : members) ok = ok && within(coarse[i], rep_fine[c], options.membership_tol);
    if (ok) {
      validated.emplace_back(members, rep_fine[c]);
      continue;
    }
    // Split and retry once: recompute every member finely and regroup tightly.
    std::vector<Signature> fine(pairs.size());
    parallel_for(members.size(), options.workers, [&](std::size_t k) {
      fine[members[k]] = signature(n, pairs[members[k]], conditions, options.fine_tol);
    });
    for (auto& sub : cluster(fine, members, options.membership_tol)) {
      const Signature ref = fine[sub.front()];
      for (int i : sub) {
        if (!within(fine[i], ref, options.membership_tol)) {
          throw NumericalFailure("enumeration: class of {" + std::to_string(pairs[sub.front()][0]) + "," +
                                     std::to_string(pairs[sub.front()][1]) +
                                     "} is not separable at the fine tolerance (manual review needed)",
                                 std::max(std::abs(fine[i].total - ref.total), std::abs(fine[i].joint - ref.joint)));
        }
      }
      validated.emplace_back(sub, ref);
    }
  }

  for (const auto& [members, sig] : validated) {
    EquivalenceClass ec;
    ec.representative = pairs[members.front()];  // indices ascend with lexicographic order
    ec.members = static_cast<int>(members.size());
    ec.total = sig.total;
    ec.joint = sig.joint;
    ec.probability = sig.joint / sig.total;
    for (int i : members) ec.member_pairs.push_back(pairs[i]);
    table.classes.push_back(std::move(ec));
  }
  std::sort(table.classes.begin(), table.classes.end(), [](const EquivalenceClass& a, const EquivalenceClass& b) {
    if (a.members != b.members) return a.members > b.members;
    return a.representative < b.representative;
  });
  return table;
}

std::string class_table_csv(const ClassTable& table) {
  std::string out = "n,conditions,representative,members,total,joint,probability\n";
  char buf[160];
  for (const EquivalenceClass& c : table.classes) {
    std::snprintf(buf, sizeof buf, "%d,%s,%d;%d,%d,%.12g,%.12g,%.12g\n", table.n,
                  decompositions_label(table.conditions).c_str(), c.representative[0], c.representative[1], c.members,
                  c.total, c.joint, c.probability);
    out += buf;
  }
  return out;
}

std::string class_table_json(const ClassTable& table, int indent) {
  nlohmann::ordered_json j;
  j["n"] = table.n;
  nlohmann::ordered_json conds = nlohmann::ordered_json::array();
  for (const TransposeSpec& t : table.conditions) conds.push_back(t.label());
  j["conditions"] = conds;
  j["total_pairs"] = table.total_pairs;
  j["trivial_count"] = table.trivial_count;
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const EquivalenceClass& c : table.classes) {
    nlohmann::ordered_json jc;
    jc["representative"] = c.representative;
    jc["members"] = c.members;
    jc["total"] = c.total;
    jc["joint"] = c.joint;
    jc["probability"] = c.probability;
    jc["member_pairs"] = c.member_pairs;
    classes.push_back(jc);
  }
  j["classes"] = classes;
  return j.dump(indent) + "\n";
}

}  // namespace bloch
