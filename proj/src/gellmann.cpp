#include "bloch/gellmann.hpp"

#include <cmath>
#include <string>

#include "bloch/error.hpp"

namespace bloch {

namespace {

void check_n(int n) {
  if (n < kMinGeneratorDimension || n > kMaxGeneratorDimension) {
    throw InvalidArgument("generator: n = " + std::to_string(n) + " outside 2..10");
  }
}

}  // namespace

GeneratorInfo decode(int n, int k) {
  check_n(n);
  if (k < 1 || k > n * n - 1) {
    throw InvalidArgument("generator index " + std::to_string(k) + " outside 1.." + std::to_string(n * n - 1) +
                          " for n = " + std::to_string(n));
  }
  // level m occupies ((m-1)^2, m^2 - 1]
  int m = 2;
  while (m * m - 1 < k) ++m;
  const int offset = k - ((m - 1) * (m - 1) - 1) - 1;  // 0 .. 2m-2
  GeneratorInfo info{};
  if (offset == 2 * (m - 1)) {
    info.kind = GeneratorKind::diagonal;
    info.level = m - 1;
    return info;
  }
  info.kind = (offset % 2 == 0) ? GeneratorKind::symmetric : GeneratorKind::antisymmetric;
  info.row = offset / 2;
  info.col = m - 1;
  return info;
}

int encode(int n, const GeneratorInfo& info) {
  check_n(n);
  if (info.kind == GeneratorKind::diagonal) {
    if (info.level < 1 || info.level > n - 1) throw InvalidArgument("encode: diagonal level out of range");
    const int m = info.level + 1;
    return m * m - 1;
  }
  if (info.row < 0 || info.row >= info.col || info.col >= n) throw InvalidArgument("encode: bad pair");
  const int m = info.col + 1;
  const int base = (m - 1) * (m - 1) - 1;
  return base + 1 + 2 * info.row + (info.kind == GeneratorKind::antisymmetric ? 1 : 0);
}

HermitianMatrix generator(int n, int k) {
  const GeneratorInfo info = decode(n, k);
  HermitianMatrix g(n);
  switch (info.kind) {
    case GeneratorKind::symmetric:
      g.set(info.row, info.col, 1.0);
      break;
    case GeneratorKind::antisymmetric:
      g.set(info.row, info.col, Complex(0.0, -1.0));
      break;
    case GeneratorKind::diagonal: {
      const int d = info.level;
      const double scale = std::sqrt(2.0 / (d * (d + 1.0)));
      for (int i = 0; i < d; ++i) g.set(i, i, scale);
      g.set(d, d, -d * scale);
      break;
    }
  }
  return g;
}

std::vector<HermitianMatrix> basis(int n) {
  check_n(n);
  std::vector<HermitianMatrix> out;
  out.reserve(n * n - 1);
  for (int k = 1; k <= n * n - 1; ++k) out.push_back(generator(n, k));
  return out;
}

}  // namespace bloch
