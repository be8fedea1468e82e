#include "bloch/ptrans.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "bloch/error.hpp"

namespace bloch {

namespace {

void validate(const BlockDecomposition& b) {
  if (b.p < 1 || b.q < 1 || b.p * b.q > kMaxDimension) {
    throw InvalidArgument("block decomposition " + std::to_string(b.p) + "x" + std::to_string(b.q) + " invalid");
  }
}

// raw transposes accept the full subset (plain transpose); a TransposeSpec needs a proper one
void validate(const Multipartite& m, bool proper = true) {
  if (m.dims.size() < 2) throw InvalidArgument("multipartite transpose needs at least two factors");
  int n = 1;
  for (int d : m.dims) {
    if (d < 1) throw InvalidArgument("multipartite transpose: factor dimension < 1");
    n *= d;
    if (n > kMaxDimension) throw InvalidArgument("multipartite transpose: dimension too large");
  }
  if (m.subset.empty() || m.subset.size() > m.dims.size() || (proper && m.subset.size() == m.dims.size())) {
    throw InvalidArgument(proper ? "multipartite transpose: subset must be a nonempty proper subset of factors"
                                 : "multipartite transpose: subset must be nonempty");
  }
  for (std::size_t i = 0; i < m.subset.size(); ++i) {
    if (m.subset[i] < 0 || m.subset[i] >= static_cast<int>(m.dims.size())) {
      throw InvalidArgument("multipartite transpose: factor position out of range");
    }
    if (i > 0 && m.subset[i] <= m.subset[i - 1]) {
      throw InvalidArgument("multipartite transpose: subset must be strictly increasing");
    }
  }
}

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidArgument("bad decomposition label '" + std::string(whole) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + sep.size();
  }
  return out;
}

std::string normalize_times(std::string_view label) {
  std::string s;
  for (std::size_t i = 0; i < label.size(); ++i) {
    // U+00D7 MULTIPLICATION SIGN in UTF-8
    if (static_cast<unsigned char>(label[i]) == 0xC3 && i + 1 < label.size() &&
        static_cast<unsigned char>(label[i + 1]) == 0x97) {
      s += 'x';
      ++i;
    } else if (label[i] == 'X') {
      s += 'x';
    } else if (label[i] != ' ') {
      s += label[i];
    }
  }
  return s;
}

}  // namespace

TransposeSpec::TransposeSpec(BlockDecomposition b) : value_(b) {
  validate(b);
  if (b.p < 2 || b.q < 2) throw InvalidArgument("block decomposition needs both factors >= 2");
}

TransposeSpec::TransposeSpec(Multipartite m) : value_(std::move(m)) { validate(std::get<Multipartite>(value_)); }

TransposeSpec TransposeSpec::parse(std::string_view raw) {
  const std::string label = normalize_times(raw);
  if (label == "mid222") return Multipartite{{2, 2, 2}, {1}};
  const std::size_t at = label.find('@');
  const std::string_view dims_part = std::string_view(label).substr(0, at);
  std::vector<int> dims;
  for (std::string_view f : split(dims_part, "x")) dims.push_back(parse_int(f, raw));
  if (at == std::string::npos) {
    if (dims.size() != 2) {
      throw InvalidArgument("bad decomposition label '" + std::string(raw) +
                            "' (use p x q, or dims@positions for multipartite)");
    }
    return BlockDecomposition{dims[0], dims[1]};
  }
  std::vector<int> subset;
  for (std::string_view f : split(std::string_view(label).substr(at + 1), "+")) subset.push_back(parse_int(f, raw));
  std::sort(subset.begin(), subset.end());
  return Multipartite{std::move(dims), std::move(subset)};
}

std::string TransposeSpec::label() const {
  if (const auto* b = std::get_if<BlockDecomposition>(&value_)) {
    return std::to_string(b->p) + "x" + std::to_string(b->q);
  }
  const auto& m = std::get<Multipartite>(value_);
  if (m.dims == std::vector<int>{2, 2, 2} && m.subset == std::vector<int>{1}) return "mid222";
  std::string s;
  for (std::size_t i = 0; i < m.dims.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(m.dims[i]);
  }
  s += '@';
  for (std::size_t i = 0; i < m.subset.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(m.subset[i]);
  }
  return s;
}

int TransposeSpec::dimension() const noexcept {
  if (const auto* b = std::get_if<BlockDecomposition>(&value_)) return b->p * b->q;
  int n = 1;
  for (int d : std::get<Multipartite>(value_).dims) n *= d;
  return n;
}

HermitianMatrix TransposeSpec::apply(const HermitianMatrix& m) const { return partial_transpose(m, *this); }

std::vector<TransposeSpec> parse_decompositions(std::string_view list) {
  std::vector<TransposeSpec> out;
  for (std::string_view item : split(list, ",")) {
    if (item.empty()) throw InvalidArgument("empty entry in decomposition list '" + std::string(list) + "'");
    out.push_back(TransposeSpec::parse(item));
  }
  return out;
}

std::string decompositions_label(std::span<const TransposeSpec> specs) {
  std::string s;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (i) s += ',';
    s += specs[i].label();
  }
  return s;
}

HermitianMatrix block_partial_transpose(const HermitianMatrix& m, int p, int q) {
  validate(BlockDecomposition{p, q});
  if (m.dim() != p * q) {
    throw InvalidArgument("block transpose " + std::to_string(p) + "x" + std::to_string(q) +
                          " applied to dimension " + std::to_string(m.dim()));
  }
  HermitianMatrix out(m.dim());
  for (int a = 0; a < q; ++a) {
    for (int c = 0; c < q; ++c) {
      for (int b = 0; b < p; ++b) {
        for (int d = 0; d < p; ++d) {
          const int row = p * a + b;
          const int col = p * c + d;
          if (row > col) continue;
          out.set(row, col, m(p * a + d, p * c + b));
        }
      }
    }
  }
  return out;
}

HermitianMatrix multipartite_partial_transpose(const HermitianMatrix& m, std::span<const int> dims,
                                               std::span<const int> subset) {
  Multipartite spec{{dims.begin(), dims.end()}, {subset.begin(), subset.end()}};
  std::sort(spec.subset.begin(), spec.subset.end());
  validate(spec, false);
  const int f = static_cast<int>(dims.size());
  int n = 1;
  for (int d : dims) n *= d;
  if (m.dim() != n) throw InvalidArgument("multipartite transpose: dimension mismatch");

  std::vector<bool> flip(f, false);
  for (int s : spec.subset) flip[s] = true;

  std::vector<int> rdig(f), cdig(f);
  auto digits = [&](int x, std::vector<int>& out) {
    for (int k = f - 1; k >= 0; --k) {
      out[k] = x % dims[k];
      x /= dims[k];
    }
  };
  auto compose = [&](const std::vector<int>& dg) {
    int x = 0;
    for (int k = 0; k < f; ++k) x = x * dims[k] + dg[k];
    return x;
  };

  HermitianMatrix out(n);
  for (int row = 0; row < n; ++row) {
    for (int col = row; col < n; ++col) {
      digits(row, rdig);
      digits(col, cdig);
      for (int k = 0; k < f; ++k) {
        if (flip[k]) std::swap(rdig[k], cdig[k]);
      }
      out.set(row, col, m(compose(rdig), compose(cdig)));
    }
  }
  return out;
}

HermitianMatrix partial_transpose(const HermitianMatrix& m, const TransposeSpec& spec) {
  if (const auto* b = std::get_if<BlockDecomposition>(&spec.value())) return block_partial_transpose(m, b->p, b->q);
  const auto& mp = std::get<Multipartite>(spec.value());
  return multipartite_partial_transpose(m, mp.dims, mp.subset);
}

bool ppt(const SectionSpec& spec, std::span<const double> c, const TransposeSpec& tspec, double tol) {
  if (tol < 0.0) throw InvalidArgument("ppt: negative tolerance");
  if (tspec.dimension() != spec.n) {
    throw InvalidArgument("ppt: decomposition " + tspec.label() + " does not match n = " + std::to_string(spec.n));
  }
  return min_eigenvalue(partial_transpose(density(spec, c), tspec)) >= -tol;
}

}  // namespace bloch
