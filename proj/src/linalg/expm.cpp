#include <array>
#include <algorithm>
#include <cmath>
#include <string>

#include "linalg/lu.hpp"
#include "markov/errors.hpp"
#include "markov/linalg.hpp"

namespace markov {

namespace {

// Largest 1-norms for which the degree 3, 5, 7, 9 and 13 approximants are
// accurate to double precision without scaling.
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                          2.097847961257068e0, 5.371920351148152e0};

struct PadeTerms {
  RealMatrix u;  // odd part
  RealMatrix v;  // even part
};

PadeTerms pade_low(const RealMatrix& a, int degree) {
  const std::size_t n = a.size();
  const RealMatrix id = RealMatrix::identity(n);
  const RealMatrix a2 = a * a;
  switch (degree) {
    case 3: {
      constexpr double b[] = {120.0, 60.0, 12.0, 1.0};
      return {a * (b[3] * a2 + b[1] * id), b[2] * a2 + b[0] * id};
    }
    case 5: {
      constexpr double b[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
      const RealMatrix a4 = a2 * a2;
      return {a * (b[5] * a4 + b[3] * a2 + b[1] * id), b[4] * a4 + b[2] * a2 + b[0] * id};
    }
    case 7: {
      constexpr double b[] = {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0};
      const RealMatrix a4 = a2 * a2;
      const RealMatrix a6 = a4 * a2;
      return {a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id), b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id};
    }
    default: {
      constexpr double b[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                              2162160.0,     110880.0,     3960.0,       90.0,        1.0};
      const RealMatrix a4 = a2 * a2;
      const RealMatrix a6 = a4 * a2;
      const RealMatrix a8 = a6 * a2;
      return {a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id),
              b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id};
    }
  }
}

PadeTerms pade13(const RealMatrix& a) {
  constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
                          129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
                          1323241920.0,        40840800.0,          960960.0,           16380.0,
                          182.0,               1.0};
  const RealMatrix id = RealMatrix::identity(a.size());
  const RealMatrix a2 = a * a;
  const RealMatrix a4 = a2 * a2;
  const RealMatrix a6 = a4 * a2;
  const RealMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  const RealMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return {a * u_inner, v};
}

RealMatrix pade_quotient(const PadeTerms& t) {
  const auto lu = detail::lu_factor(t.v - t.u);
  if (lu.singular) throw OverflowGuard("Pade denominator is singular");
  return detail::lu_solve(lu, t.v + t.u);
}

}  // namespace

RealMatrix expm(const RealMatrix& m) {
  if (op_norm(m) > kExpmNormLimit) {
    throw OverflowGuard("expm argument norm exceeds " + std::to_string(kExpmNormLimit));
  }
  const std::size_t n = m.size();
  if (n == 0) return m;

  const double norm1 = one_norm(m);
  constexpr std::array<int, 4> kDegrees = {3, 5, 7, 9};
  for (std::size_t i = 0; i < kDegrees.size(); ++i) {
    if (norm1 <= kTheta[i]) return pade_quotient(pade_low(m, kDegrees[i]));
  }

  const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta[4]))));
  RealMatrix r = pade_quotient(pade13(m * std::ldexp(1.0, -squarings)));
  for (int k = 0; k < squarings; ++k) r = r * r;

  for (const double v : r.values()) {
    if (!std::isfinite(v)) throw OverflowGuard("matrix exponential overflowed");
  }
  return r;
}

}  // namespace markov
