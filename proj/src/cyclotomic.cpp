#include "shimura/cyclotomic.hpp"

#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shimura/error.hpp"

namespace shimura {

namespace {

struct PrimePower {
  int p = 0;
  int e = 0;
  int q = 1;
};

struct Layout {
  int n = 1;
  std::vector<PrimePower> parts;
  std::vector<int> cofactor;  // n / q_i
  std::vector<int> inverse;   // cofactor^{-1} mod q_i
};

long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

int inverse_mod(int a, int m) {
  if (m == 1) return 0;
  long long t = 0, new_t = 1, r = m, new_r = mod(a, m);
  while (new_r != 0) {
    long long quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  return static_cast<int>(mod(t, m));
}

std::vector<PrimePower> factor(int n) {
  std::vector<PrimePower> out;
  for (int p = 2; static_cast<long long>(p) * p <= n; ++p) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.e;
      pp.q *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

const Layout& layout(int n) {
  thread_local std::unordered_map<int, Layout> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Layout l;
  l.n = n;
  l.parts = factor(n);
  for (const auto& pp : l.parts) {
    l.cofactor.push_back(n / pp.q);
    l.inverse.push_back(inverse_mod(n / pp.q, pp.q));
  }
  return cache.emplace(n, std::move(l)).first->second;
}

using Term = std::pair<int, int>;  // exponent, sign

// Rewrites one prime-power component exponent into basis exponents.
std::vector<Term> expand_component(const PrimePower& pp, int k) {
  if (pp.p == 2) {
    int half = pp.q / 2;
    if (k < half) return {{k, 1}};
    return {{k - half, -1}};
  }
  int step = pp.q / pp.p;
  int j = k / step;
  if (j != 0) return {{k, 1}};
  std::vector<Term> out;
  out.reserve(pp.p - 1);
  for (int jj = 1; jj < pp.p; ++jj) out.push_back({k + jj * step, -1});
  return out;
}

// zeta_n^k as a signed sum of basis elements.
std::vector<Term> expand(int n, long long k) {
  const Layout& l = layout(n);
  std::vector<Term> acc{{0, 1}};
  long long kk = mod(k, n);
  for (std::size_t i = 0; i < l.parts.size(); ++i) {
    const auto& pp = l.parts[i];
    int comp = static_cast<int>(mod(kk * l.inverse[i], pp.q));
    auto pieces = expand_component(pp, comp);
    std::vector<Term> next;
    next.reserve(acc.size() * pieces.size());
    for (const auto& [e0, s0] : acc) {
      for (const auto& [e1, s1] : pieces) {
        next.push_back({static_cast<int>(mod(e0 + static_cast<long long>(e1) * l.cofactor[i], n)),
                        s0 * s1});
      }
    }
    acc = std::move(next);
  }
  return acc;
}

std::map<int, Rational> to_basis(int n, const std::map<int, Rational>& raw) {
  std::map<int, Rational> out;
  for (const auto& [k, c] : raw) {
    if (c == 0) continue;
    for (const auto& [e, s] : expand(n, k)) {
      if (s > 0) out[e] += c;
      else out[e] -= c;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0) it = out.erase(it);
    else ++it;
  }
  return out;
}

// Drops prime-power components while the value still lies in the subfield.
std::pair<int, std::map<int, Rational>> minimize(int n, const std::map<int, Rational>& basis) {
  if (basis.empty()) return {1, {}};
  const Layout& l = layout(n);
  std::vector<PrimePower> parts = l.parts;
  std::map<std::vector<int>, Rational> terms;
  for (const auto& [k, c] : basis) {
    std::vector<int> comps(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
      comps[i] = static_cast<int>(mod(static_cast<long long>(k) * l.inverse[i], parts[i].q));
    terms.emplace(std::move(comps), c);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < parts.size() && !changed; ++i) {
      PrimePower& pp = parts[i];
      std::map<std::vector<int>, Rational> next;
      bool ok = true;
      bool drop = false;
      if (pp.p == 2 && pp.e == 1) {
        next = terms;
        drop = true;
      } else if (pp.p == 2 && pp.e == 2) {
        for (const auto& [comps, c] : terms) {
          if (comps[i] != 0) { ok = false; break; }
        }
        if (ok) { next = terms; drop = true; }
      } else if (pp.e >= 2) {
        for (const auto& [comps, c] : terms) {
          if (comps[i] % pp.p != 0) { ok = false; break; }
          auto reduced = comps;
          reduced[i] /= pp.p;
          next.emplace(std::move(reduced), c);
        }
        if (ok) {
          pp.e -= 1;
          pp.q /= pp.p;
        }
      } else {
        // q = p odd: each slice over j = 1..p-1 must be constant.
        std::map<std::vector<int>, std::vector<const Rational*>> slices;
        for (const auto& [comps, c] : terms) {
          auto rest = comps;
          rest[i] = 0;
          auto& slot = slices[rest];
          if (slot.empty()) slot.assign(pp.p - 1, nullptr);
          slot[comps[i] - 1] = &c;
        }
        for (const auto& [rest, vals] : slices) {
          for (const Rational* v : vals) {
            if (v == nullptr || *v != *vals[0]) { ok = false; break; }
          }
          if (!ok) break;
          next.emplace(rest, -*vals[0]);
        }
        if (ok) drop = true;
      }
      if (!ok) continue;
      if (drop) {
        std::map<std::vector<int>, Rational> erased;
        for (auto& [comps, c] : next) {
          auto shorter = comps;
          shorter.erase(shorter.begin() + static_cast<long>(i));
          erased.emplace(std::move(shorter), c);
        }
        parts.erase(parts.begin() + static_cast<long>(i));
        terms = std::move(erased);
      } else {
        terms = std::move(next);
      }
      changed = true;
    }
  }

  int m = 1;
  for (const auto& pp : parts) m *= pp.q;
  std::map<int, Rational> out;
  for (const auto& [comps, c] : terms) {
    long long k = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) k += static_cast<long long>(comps[i]) * (m / parts[i].q);
    out.emplace(static_cast<int>(mod(k, m)), c);
  }
  return {m, std::move(out)};
}

std::vector<int> basis_exponents(int n) {
  std::vector<int> out;
  for (int k = 0; k < n; ++k) {
    auto e = expand(n, k);
    if (e.size() == 1 && e[0].first == k && e[0].second == 1) out.push_back(k);
  }
  return out;
}

}  // namespace

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Cyclotomic::Cyclotomic(long value) {
  if (value != 0) coeffs_.emplace(0, Rational(value));
}

Cyclotomic::Cyclotomic(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q != 0) coeffs_.emplace(0, std::move(q));
}

Cyclotomic::Cyclotomic(int conductor, std::map<int, Rational> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {}

Cyclotomic Cyclotomic::normalize(int conductor, const std::map<int, Rational>& raw) {
  auto [m, coeffs] = minimize(conductor, to_basis(conductor, raw));
  return Cyclotomic(m, std::move(coeffs));
}

Cyclotomic Cyclotomic::zeta(int n, long k) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "zeta: conductor must be positive");
  std::map<int, Rational> raw;
  raw.emplace(static_cast<int>(mod(k, n)), Rational(1));
  return normalize(n, raw);
}

std::map<int, Rational> Cyclotomic::lifted_to(int conductor) const {
  int factor_up = conductor / conductor_;
  std::map<int, Rational> raw;
  for (const auto& [k, c] : coeffs_) raw.emplace(k * factor_up, c);
  if (factor_up == 1) return raw;
  return to_basis(conductor, raw);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  int l = std::lcm(conductor_, other.conductor_);
  auto a = lifted_to(l);
  for (const auto& [k, c] : other.lifted_to(l)) a[k] += c;
  for (auto it = a.begin(); it != a.end();) {
    if (it->second == 0) it = a.erase(it);
    else ++it;
  }
  auto [m, coeffs] = minimize(l, a);
  conductor_ = m;
  coeffs_ = std::move(coeffs);
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& [k, c] : out.coeffs_) c = -c;
  return out;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& other) { return *this += -other; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& other) {
  if (is_zero() || other.is_zero()) return *this = Cyclotomic();
  if (other.is_rational()) return *this = scale(*this, other.coeffs_.begin()->second);
  if (is_rational()) return *this = scale(other, coeffs_.begin()->second);
  int l = std::lcm(conductor_, other.conductor_);
  auto a = lifted_to(l);
  auto b = other.lifted_to(l);
  std::map<int, Rational> raw;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) raw[(ka + kb) % l] += ca * cb;
  return *this = normalize(l, raw);
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& other) { return *this *= other.inverse(); }

Cyclotomic scale(const Cyclotomic& a, const Rational& q) {
  if (q == 0) return Cyclotomic();
  Cyclotomic out = a;
  for (auto& [k, c] : out.coeffs_) c *= q;
  return out;
}

Rational Cyclotomic::as_rational() const {
  if (!is_rational()) fail(ErrorCode::NotRational, "value " + str() + " is not rational");
  return is_zero() ? Rational(0) : coeffs_.begin()->second;
}

long long Cyclotomic::as_integer() const {
  if (!is_rational()) fail(ErrorCode::NotIntegral, "value " + str() + " is not rational");
  Rational q = as_rational();
  if (q.get_den() != 1 || !q.get_num().fits_slong_p())
    fail(ErrorCode::NotIntegral, "value " + str() + " is not a machine integer");
  return q.get_num().get_si();
}

Cyclotomic Cyclotomic::galois(long k) const {
  if (std::gcd(static_cast<long>(conductor_), k) != 1 && conductor_ != 1)
    fail(ErrorCode::InvalidArgument, "galois: exponent not coprime to conductor");
  if (is_rational()) return *this;
  std::map<int, Rational> raw;
  for (const auto& [e, c] : coeffs_) raw[static_cast<int>(mod(static_cast<long long>(e) * k, conductor_))] += c;
  return normalize(conductor_, raw);
}

Cyclotomic Cyclotomic::conjugate() const { return galois(-1); }

Cyclotomic Cyclotomic::real_part() const {
  return scale(*this + conjugate(), Rational(1, 2));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) return Cyclotomic(Rational(1) / coeffs_.begin()->second);
  const int n = conductor_;
  const auto basis = basis_exponents(n);
  const std::size_t dim = basis.size();
  std::map<int, std::size_t> slot;
  for (std::size_t i = 0; i < dim; ++i) slot[basis[i]] = i;

  // Augmented system: columns are this * zeta^b_j, right side is 1.
  std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(dim + 1));
  for (std::size_t j = 0; j < dim; ++j) {
    std::map<int, Rational> raw;
    for (const auto& [k, c] : coeffs_) raw[(k + basis[j]) % n] += c;
    for (const auto& [k, c] : to_basis(n, raw)) m[slot.at(k)][j] = c;
  }
  for (const auto& [e, s] : expand(n, 0)) m[slot.at(e)][dim] = s;

  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    while (pivot < dim && m[pivot][col] == 0) ++pivot;
    if (pivot == dim) fail(ErrorCode::Internal, "singular multiplication matrix");
    std::swap(m[pivot], m[col]);
    Rational inv = 1 / m[col][col];
    for (std::size_t c = col; c <= dim; ++c) m[col][c] *= inv;
    for (std::size_t row = 0; row < dim; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational f = m[row][col];
      for (std::size_t c = col; c <= dim; ++c) m[row][c] -= f * m[col][c];
    }
  }
  std::map<int, Rational> raw;
  for (std::size_t j = 0; j < dim; ++j)
    if (m[j][dim] != 0) raw.emplace(basis[j], m[j][dim]);
  return normalize(n, raw);
}

std::string Cyclotomic::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  const std::string z = "z(" + std::to_string(conductor_) + ")";
  for (const auto& [k, c] : coeffs_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (k == 0) {
      out += rational_str(mag);
      continue;
    }
    if (mag != 1) out += rational_str(mag) + "*";
    out += z;
    if (k != 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace shimura
