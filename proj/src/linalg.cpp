#include "bloch/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "bloch/error.hpp"

namespace bloch {

HermitianMatrix::HermitianMatrix(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDimension) {
    throw InvalidArgument("HermitianMatrix: dimension " + std::to_string(dim) + " outside 1.." +
                          std::to_string(kMaxDimension));
  }
}

HermitianMatrix HermitianMatrix::identity(int dim, double scale) {
  HermitianMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.entries_[m.index(i, i)] = scale;
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  HermitianMatrix m(static_cast<int>(values.size()));
  for (int i = 0; i < m.dim_; ++i) m.entries_[m.index(i, i)] = values[i];
  return m;
}

void HermitianMatrix::set(int row, int col, Complex value) {
  if (row < 0 || col < 0 || row >= dim_ || col >= dim_) {
    throw InvalidArgument("HermitianMatrix::set: index out of range");
  }
  if (row == col) {
    if (value.imag() != 0.0) throw InvalidArgument("HermitianMatrix::set: diagonal entry must be real");
    entries_[index(row, row)] = value.real();
    return;
  }
  entries_[index(row, col)] = value;
  entries_[index(col, row)] = std::conj(value);
}

void HermitianMatrix::add_scaled(const HermitianMatrix& other, double scale) {
  if (other.dim_ != dim_) throw InvalidArgument("HermitianMatrix::add_scaled: dimension mismatch");
  const int count = dim_ * dim_;
  for (int i = 0; i < count; ++i) entries_[i] += scale * other.entries_[i];
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
  add_scaled(other, 1.0);
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& other) {
  add_scaled(other, -1.0);
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double scale) noexcept {
  const int count = dim_ * dim_;
  for (int i = 0; i < count; ++i) entries_[i] *= scale;
  return *this;
}

double HermitianMatrix::trace() const noexcept {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += entries_[index(i, i)].real();
  return t;
}

double HermitianMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  const int count = dim_ * dim_;
  for (int i = 0; i < count; ++i) s += std::norm(entries_[i]);
  return std::sqrt(s);
}

bool HermitianMatrix::is_real() const noexcept {
  const int count = dim_ * dim_;
  for (int i = 0; i < count; ++i) {
    if (entries_[i].imag() != 0.0) return false;
  }
  return true;
}

HermitianMatrix HermitianMatrix::transpose() const {
  HermitianMatrix t(dim_);
  const int count = dim_ * dim_;
  for (int i = 0; i < count; ++i) t.entries_[i] = std::conj(entries_[i]);
  return t;
}

double HermitianMatrix::max_abs_difference(const HermitianMatrix& other) const {
  if (other.dim_ != dim_) throw InvalidArgument("HermitianMatrix: dimension mismatch");
  double d = 0.0;
  const int count = dim_ * dim_;
  for (int i = 0; i < count; ++i) d = std::max(d, std::abs(entries_[i] - other.entries_[i]));
  return d;
}

bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) noexcept {
  if (a.dim_ != b.dim_) return false;
  return std::equal(a.entries_.begin(), a.entries_.begin() + a.dim_ * a.dim_, b.entries_.begin());
}

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
HermitianMatrix operator*(double scale, HermitianMatrix a) { return a *= scale; }

// ---------------------------------------------------------------------------
// Jacobi

void jacobi_symmetric(std::span<double> a, int n, std::span<double> vectors) {
  const bool want_vectors = !vectors.empty();
  if (want_vectors) {
    std::fill(vectors.begin(), vectors.begin() + n * n, 0.0);
    for (int i = 0; i < n; ++i) vectors[i * n + i] = 1.0;
  }
  if (n == 1) return;

  double fro2 = 0.0;
  for (int i = 0; i < n * n; ++i) fro2 += a[i] * a[i];
  const double threshold = kJacobiRelativeTolerance * std::sqrt(fro2);

  double off = 0.0;
  for (int sweep = 0; sweep <= kMaxJacobiSweeps; ++sweep) {
    off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += 2.0 * a[p * n + q] * a[p * n + q];
    }
    off = std::sqrt(off);
    if (off <= threshold) return;
    if (sweep == kMaxJacobiSweeps) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          const double new_rp = c * arp - s * arq;
          const double new_rq = s * arp + c * arq;
          a[r * n + p] = new_rp;
          a[p * n + r] = new_rp;
          a[r * n + q] = new_rq;
          a[q * n + r] = new_rq;
        }
        if (want_vectors) {
          for (int r = 0; r < n; ++r) {
            const double vrp = vectors[r * n + p];
            const double vrq = vectors[r * n + q];
            vectors[r * n + p] = c * vrp - s * vrq;
            vectors[r * n + q] = s * vrp + c * vrq;
          }
        }
      }
    }
  }
  throw NumericalFailure("jacobi: no convergence after " + std::to_string(kMaxJacobiSweeps) +
                             " sweeps (off-diagonal norm " + std::to_string(off) + ")",
                         off);
}

namespace {

constexpr int kMaxEmbedded = 2 * kMaxDimension;

struct Block {
  int size = 0;
  std::array<int, kMaxDimension> members{};
};

// Connected components of the off-diagonal sparsity graph, members sorted.
int find_blocks(const HermitianMatrix& m, std::array<Block, kMaxDimension>& blocks) {
  const int n = m.dim();
  std::array<int, kMaxDimension> parent{};
  std::iota(parent.begin(), parent.begin() + n, 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (m(i, j) != Complex{}) {
        const int ri = find(i);
        const int rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  std::array<int, kMaxDimension> slot{};
  slot.fill(-1);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (slot[r] < 0) {
      slot[r] = count;
      blocks[count].size = 0;
      ++count;
    }
    Block& b = blocks[slot[r]];
    b.members[b.size++] = i;
  }
  return count;
}

struct BlockSolution {
  int size = 0;
  std::array<double, kMaxDimension> values{};
  // Column-major complex eigenvectors in block-local coordinates (size x size).
  std::array<Complex, kMaxDimension * kMaxDimension> vectors{};
};

void solve_real(const HermitianMatrix& m, const Block& b, bool use_modulus, bool want_vectors,
                BlockSolution& out) {
  const int k = b.size;
  std::array<double, kMaxDimension * kMaxDimension> a{};
  std::array<double, kMaxDimension * kMaxDimension> v{};
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Complex z = m(b.members[i], b.members[j]);
      a[i * k + j] = (use_modulus && i != j) ? std::abs(z) : z.real();
    }
  }
  jacobi_symmetric(std::span<double>(a.data(), k * k), k,
                   want_vectors ? std::span<double>(v.data(), k * k) : std::span<double>{});
  out.size = k;
  for (int i = 0; i < k; ++i) out.values[i] = a[i * k + i];
  if (want_vectors) {
    for (int col = 0; col < k; ++col) {
      for (int row = 0; row < k; ++row) out.vectors[col * k + row] = v[row * k + col];
    }
  }
}

// Phases phi with M = D M' D^dagger, D = diag(exp(i phi)), M' real with |M| off-diagonal.
void tree_gauge(const HermitianMatrix& m, const Block& b, std::array<double, kMaxDimension>& phase) {
  const int k = b.size;
  std::array<bool, kMaxDimension> seen{};
  std::array<int, kMaxDimension> queue{};
  int head = 0;
  int tail = 0;
  phase[0] = 0.0;
  seen[0] = true;
  queue[tail++] = 0;
  while (head < tail) {
    const int i = queue[head++];
    for (int j = 0; j < k; ++j) {
      if (seen[j]) continue;
      const Complex z = m(b.members[i], b.members[j]);
      if (z == Complex{}) continue;
      phase[j] = phase[i] - std::arg(z);
      seen[j] = true;
      queue[tail++] = j;
    }
  }
}

void solve_embedded(const HermitianMatrix& m, const Block& b, bool want_vectors, BlockSolution& out) {
  const int k = b.size;
  const int e = 2 * k;
  std::array<double, kMaxEmbedded * kMaxEmbedded> a{};
  std::array<double, kMaxEmbedded * kMaxEmbedded> v{};
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Complex z = m(b.members[i], b.members[j]);
      a[i * e + j] = z.real();
      a[i * e + (j + k)] = -z.imag();
      a[(i + k) * e + j] = z.imag();
      a[(i + k) * e + (j + k)] = z.real();
    }
  }
  jacobi_symmetric(std::span<double>(a.data(), e * e), e,
                   want_vectors ? std::span<double>(v.data(), e * e) : std::span<double>{});

  std::array<int, kMaxEmbedded> order{};
  std::iota(order.begin(), order.begin() + e, 0);
  std::sort(order.begin(), order.begin() + e, [&](int x, int y) { return a[x * e + x] < a[y * e + y]; });

  out.size = k;
  for (int i = 0; i < k; ++i) {
    out.values[i] = 0.5 * (a[order[2 * i] * e + order[2 * i]] + a[order[2 * i + 1] * e + order[2 * i + 1]]);
  }
  if (!want_vectors) return;

  // Each real eigenvector (x, y) maps to the complex eigenvector x + i y; a
  // degenerate real pair maps to complex multiples of each other, so
  // Gram-Schmidt over the sorted list keeps exactly k of them.
  int accepted = 0;
  std::array<double, kMaxDimension> accepted_value{};
  for (int idx = 0; idx < e && accepted < k; ++idx) {
    const int col = order[idx];
    std::array<Complex, kMaxDimension> z{};
    for (int r = 0; r < k; ++r) z[r] = Complex(v[r * e + col], v[(r + k) * e + col]);
    for (int prev = 0; prev < accepted; ++prev) {
      Complex dot{};
      for (int r = 0; r < k; ++r) dot += std::conj(out.vectors[prev * k + r]) * z[r];
      for (int r = 0; r < k; ++r) z[r] -= dot * out.vectors[prev * k + r];
    }
    double norm = 0.0;
    for (int r = 0; r < k; ++r) norm += std::norm(z[r]);
    norm = std::sqrt(norm);
    if (norm < 0.5) continue;
    for (int r = 0; r < k; ++r) out.vectors[accepted * k + r] = z[r] / norm;
    accepted_value[accepted] = a[col * e + col];
    ++accepted;
  }
  if (accepted != k) {
    throw NumericalFailure("eigensystem: could not recover complex eigenvectors from embedding", 0.0);
  }
  for (int i = 0; i < k; ++i) out.values[i] = accepted_value[i];
}

enum class BlockKind { scalar, real, tree, cyclic };

BlockKind classify(const HermitianMatrix& m, const Block& b) {
  if (b.size == 1) return BlockKind::scalar;
  bool complex = false;
  int edges = 0;
  for (int i = 0; i < b.size; ++i) {
    for (int j = i + 1; j < b.size; ++j) {
      const Complex z = m(b.members[i], b.members[j]);
      if (z == Complex{}) continue;
      ++edges;
      if (z.imag() != 0.0) complex = true;
    }
  }
  if (!complex) return BlockKind::real;
  return edges == b.size - 1 ? BlockKind::tree : BlockKind::cyclic;
}

void solve_block(const HermitianMatrix& m, const Block& b, bool want_vectors, BlockSolution& out) {
  switch (classify(m, b)) {
    case BlockKind::scalar:
      out.size = 1;
      out.values[0] = m(b.members[0], b.members[0]).real();
      out.vectors[0] = 1.0;
      return;
    case BlockKind::real:
      solve_real(m, b, false, want_vectors, out);
      return;
    case BlockKind::tree: {
      solve_real(m, b, true, want_vectors, out);
      if (want_vectors) {
        std::array<double, kMaxDimension> phase{};
        tree_gauge(m, b, phase);
        for (int col = 0; col < b.size; ++col) {
          for (int r = 0; r < b.size; ++r) out.vectors[col * b.size + r] *= std::polar(1.0, phase[r]);
        }
      }
      return;
    }
    case BlockKind::cyclic:
      solve_embedded(m, b, want_vectors, out);
      return;
  }
}

Eigensystem solve(const HermitianMatrix& m, SolverPath path, bool want_vectors) {
  const int n = m.dim();
  std::array<Block, kMaxDimension> blocks{};
  int block_count = 1;
  if (path == SolverPath::embedding) {
    blocks[0].size = n;
    std::iota(blocks[0].members.begin(), blocks[0].members.begin() + n, 0);
  } else {
    block_count = find_blocks(m, blocks);
  }

  struct Pair {
    double value;
    int block;
    int column;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n);
  std::vector<BlockSolution> solutions(block_count);
  for (int bi = 0; bi < block_count; ++bi) {
    if (path == SolverPath::embedding) {
      solve_embedded(m, blocks[bi], want_vectors, solutions[bi]);
    } else {
      solve_block(m, blocks[bi], want_vectors, solutions[bi]);
    }
    for (int c = 0; c < solutions[bi].size; ++c) pairs.push_back({solutions[bi].values[c], bi, c});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.value < y.value; });

  Eigensystem out;
  out.values.reserve(n);
  for (const Pair& p : pairs) out.values.push_back(p.value);
  if (want_vectors) {
    out.vectors.reserve(n);
    for (const Pair& p : pairs) {
      const Block& b = blocks[p.block];
      const BlockSolution& s = solutions[p.block];
      std::vector<Complex> vec(n);
      for (int r = 0; r < b.size; ++r) vec[b.members[r]] = s.vectors[p.column * b.size + r];
      out.vectors.push_back(std::move(vec));
    }
  }
  return out;
}

}  // namespace

std::vector<double> eigenvalues(const HermitianMatrix& m, SolverPath path) {
  return solve(m, path, false).values;
}

Eigensystem eigensystem(const HermitianMatrix& m, SolverPath path) { return solve(m, path, true); }

double min_eigenvalue(const HermitianMatrix& m) {
  std::array<Block, kMaxDimension> blocks{};
  const int block_count = find_blocks(m, blocks);
  double lowest = std::numeric_limits<double>::infinity();
  BlockSolution s;
  for (int bi = 0; bi < block_count; ++bi) {
    solve_block(m, blocks[bi], false, s);
    for (int c = 0; c < s.size; ++c) lowest = std::min(lowest, s.values[c]);
  }
  return lowest;
}

}  // namespace bloch
