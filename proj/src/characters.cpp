#include "shimura/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "shimura/error.hpp"

namespace shimura {

namespace {

using i64 = long long;

i64 md(i64 a, i64 p) {
  a %= p;
  return a < 0 ? a + p : a;
}

i64 power_mod(i64 b, i64 e, i64 p) {
  i64 r = 1;
  b = md(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

i64 inv_mod(i64 a, i64 p) { return power_mod(a, p - 2, p); }

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

i64 choose_prime(int exponent, int order) {
  const double bound = 2.0 * std::sqrt(static_cast<double>(order));
  for (i64 p = exponent + 1;; p += exponent)
    if (p > bound && is_prime(p)) return p;
}

i64 primitive_root(i64 p) {
  std::vector<i64> factors;
  i64 m = p - 1;
  for (i64 d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) factors.push_back(m);
  for (i64 g = 2;; ++g) {
    bool ok = true;
    for (i64 q : factors) ok = ok && power_mod(g, (p - 1) / q, p) != 1;
    if (ok) return g;
  }
}

using Vec = std::vector<i64>;
using Mat = std::vector<Vec>;  // row-major

// Kernel of the rows x cols matrix a over F_p, as column vectors.
std::vector<Vec> kernel(Mat a, i64 p) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c]) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[r], a[sel]);
    i64 iv = inv_mod(a[r][c], p);
    for (auto& v : a[r]) v = v * iv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || !a[i][c]) continue;
      i64 f = a[i][c];
      for (int j = 0; j < cols; ++j) a[i][j] = md(a[i][j] - f * a[r][j], p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<Vec> out;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, 0);
    v[f] = 1;
    for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) v[pivot_col[i]] = md(-a[i][f], p);
    out.push_back(std::move(v));
  }
  return out;
}

[[noreturn]] void lift_failed(const std::string& msg) { fail(ErrorCode::LiftFailed, msg); }

}  // namespace

std::vector<std::string> class_names(const ConjugacyData& cd) {
  std::vector<std::string> names;
  std::vector<int> used(1, 0);
  for (int c = 0; c < cd.size(); ++c) {
    int o = cd.element_order[c];
    if (static_cast<int>(used.size()) <= o) used.resize(o + 1, 0);
    int k = used[o]++;
    std::string suffix;
    do {
      suffix.insert(suffix.begin(), static_cast<char>('a' + k % 26));
      k = k / 26 - 1;
    } while (k >= 0);
    names.push_back(std::to_string(o) + suffix);
  }
  return names;
}

CharacterTable character_table(const GroupPtr& gp, const Limits& limits) {
  const FiniteGroup& g = *gp;
  if (g.order() > limits.structure_cap)
    fail(ErrorCode::OrderCapExceeded, "character tables limited to order " + std::to_string(limits.structure_cap));
  const auto& cd = g.conjugacy();
  const int k = cd.size();
  const int n = g.order();
  const int e = g.exponent();
  const i64 p = choose_prime(e, n);

  // a[i][j][l] = #{x in C_i : x^-1 g_l in C_j}
  std::vector<Mat> mats(k, Mat(k, Vec(k, 0)));
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l) {
      int gl = cd.representatives[l];
      for (int x : cd.classes[i]) ++mats[i][cd.class_of[g.mul(g.inv(x), gl)]][l];
    }
  for (auto& m : mats)
    for (auto& row : m)
      for (auto& v : row) v %= p;

  // Split F_p^k into common eigenspaces.
  std::vector<std::vector<Vec>> spaces;
  {
    std::vector<Vec> basis;
    for (int j = 0; j < k; ++j) {
      Vec v(k, 0);
      v[j] = 1;
      basis.push_back(v);
    }
    spaces.push_back(basis);
  }
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<Vec>> next;
    for (auto& w : spaces) {
      if (w.size() == 1) {
        next.push_back(std::move(w));
        continue;
      }
      const int d = static_cast<int>(w.size());
      // columns M_i w_t
      std::vector<Vec> mw(d, Vec(k, 0));
      for (int t = 0; t < d; ++t)
        for (int r = 0; r < k; ++r) {
          i64 s = 0;
          for (int c = 0; c < k; ++c) s += mats[i][r][c] * w[t][c] % p;
          mw[t][r] = s % p;
        }
      int found = 0;
      for (i64 lambda = 0; lambda < p && found < d; ++lambda) {
        Mat a(k, Vec(d));
        for (int r = 0; r < k; ++r)
          for (int t = 0; t < d; ++t) a[r][t] = md(mw[t][r] - lambda * w[t][r], p);
        auto ker = kernel(a, p);
        if (ker.empty()) continue;
        std::vector<Vec> sub;
        for (const auto& c : ker) {
          Vec v(k, 0);
          for (int t = 0; t < d; ++t)
            for (int r = 0; r < k; ++r) v[r] = (v[r] + c[t] * w[t][r]) % p;
          sub.push_back(std::move(v));
        }
        found += static_cast<int>(sub.size());
        next.push_back(std::move(sub));
      }
      if (found != d) lift_failed("class matrix not diagonalizable modulo " + std::to_string(p));
    }
    spaces = std::move(next);
  }
  if (static_cast<int>(spaces.size()) != k) lift_failed("eigenspaces did not split into lines");

  const i64 z = power_mod(primitive_root(p), (p - 1) / e, p);
  CharacterTable table;
  table.group = gp;
  table.prime = p;
  for (const auto& sp : spaces) {
    Vec w = sp[0];
    if (w[0] == 0) lift_failed("eigenvector with zero identity coordinate");
    i64 s0 = inv_mod(w[0], p);
    for (auto& v : w) v = v * s0 % p;
    i64 sum = 0;
    for (int j = 0; j < k; ++j)
      sum = (sum + w[j] * w[cd.inverse_class[j]] % p * inv_mod(cd.class_size(j), p)) % p;
    if (sum == 0) lift_failed("degenerate norm");
    i64 d2 = n % p * inv_mod(sum, p) % p;
    int degree = 0;
    for (int d = 1; d * d <= n; ++d)
      if (static_cast<i64>(d) * d % p == d2) {
        degree = d;
        break;
      }
    if (degree == 0) lift_failed("no degree solves the norm equation");
    Vec chi(k);
    for (int j = 0; j < k; ++j) chi[j] = w[j] * degree % p * inv_mod(cd.class_size(j), p) % p;

    ClassFunction values(k);
    for (int j = 0; j < k; ++j) {
      const int o = cd.element_order[j];
      const i64 zo = power_mod(z, e / o, p);
      const i64 io = inv_mod(o, p);
      Cyclotomic v;
      int total = 0;
      for (int a = 0; a < o; ++a) {
        i64 s = 0;
        for (int t = 0; t < o; ++t)
          s = (s + chi[cd.power_map(j, t)] * power_mod(zo, md(-static_cast<i64>(a) * t, o), p)) % p;
        s = s * io % p;
        if (s > degree) lift_failed("eigenvalue multiplicity out of range");
        total += static_cast<int>(s);
        if (s) v += scale(Cyclotomic::zeta(o, a), Rational(static_cast<long>(s)));
      }
      if (total != degree) lift_failed("eigenvalue multiplicities do not sum to the degree");
      values[j] = std::move(v);
    }
    table.chars.push_back(std::move(values));
    table.degrees.push_back(degree);
  }

  // Deterministic order.
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<std::string>> keys(k);
  for (int c = 0; c < k; ++c)
    for (const auto& v : table.chars[c]) keys[c].push_back(v.str());
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (table.degrees[a] != table.degrees[b]) return table.degrees[a] < table.degrees[b];
    return keys[a] < keys[b];
  });
  CharacterTable sorted;
  sorted.group = gp;
  sorted.prime = p;
  for (int c : idx) {
    sorted.chars.push_back(table.chars[c]);
    sorted.degrees.push_back(table.degrees[c]);
  }
  sorted.trivial_index = -1;
  for (int c = 0; c < k; ++c) {
    bool trivial = true;
    for (const auto& v : sorted.chars[c]) trivial = trivial && v == Cyclotomic(1);
    if (trivial) sorted.trivial_index = c;
  }
  if (sorted.trivial_index < 0) lift_failed("trivial character missing");

  // Both orthogonality relations, exactly.
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      Cyclotomic ip = inner_product(sorted, sorted.chars[a], sorted.chars[b]);
      if (ip != Cyclotomic(a == b ? 1 : 0)) lift_failed("row orthogonality violated");
    }
  for (int x = 0; x < k; ++x)
    for (int y = x; y < k; ++y) {
      Cyclotomic s;
      for (int c = 0; c < k; ++c) s += sorted.chars[c][x] * sorted.chars[c][y].conjugate();
      if (s != Cyclotomic(x == y ? cd.centralizer_order[x] : 0)) lift_failed("column orthogonality violated");
    }
  return sorted;
}

EigenvalueProfile eigenvalue_profile(const CharacterTable& t, int element) {
  const auto& g = *t.group;
  if (element < 0 || element >= g.order()) fail(ErrorCode::IndexOutOfRange, "element index out of range");
  const auto& cd = t.classes();
  const int m = g.element_order(element);
  const int c = cd.class_of[element];
  EigenvalueProfile prof;
  prof.element = element;
  prof.order = m;
  for (int chi = 0; chi < t.size(); ++chi) {
    std::vector<int> counts(m, 0);
    for (int a = 0; a < m; ++a) {
      Cyclotomic s;
      for (int k = 0; k < m; ++k) s += t.chars[chi][cd.power_map(c, k)] * Cyclotomic::zeta(m, -static_cast<long>(a) * k);
      counts[a] = static_cast<int>(scale(s, Rational(1, m)).as_integer());
      if (counts[a] < 0) fail(ErrorCode::NotIntegral, "negative eigenvalue multiplicity");
    }
    prof.counts.push_back(std::move(counts));
  }
  return prof;
}

Cyclotomic inner_product(const CharacterTable& t, const ClassFunction& f, const ClassFunction& h) {
  const auto& cd = t.classes();
  Cyclotomic s;
  for (int c = 0; c < cd.size(); ++c) s += scale(f[c] * h[c].conjugate(), Rational(cd.class_size(c)));
  return scale(s, Rational(1, t.group->order()));
}

Cyclotomic inner_product(const CharacterTable& t, const ClassFunction& f, int chi) {
  return inner_product(t, f, t.chars.at(chi));
}

std::string chartab_text(const CharacterTable& t) {
  const auto& cd = t.classes();
  auto names = class_names(cd);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{"class"}, size{"size"}, cent{"|C(x)|"};
  for (int c = 0; c < cd.size(); ++c) {
    head.push_back(names[c]);
    size.push_back(std::to_string(cd.class_size(c)));
    cent.push_back(std::to_string(cd.centralizer_order[c]));
  }
  cells.push_back(head);
  cells.push_back(size);
  cells.push_back(cent);
  for (int chi = 0; chi < t.size(); ++chi) {
    std::vector<std::string> row{"X." + std::to_string(chi + 1)};
    for (const auto& v : t.chars[chi]) row.push_back(v.str());
    cells.push_back(row);
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& r : cells)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  std::ostringstream out;
  for (const auto& r : cells) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << "  ";
      out << r[i] << std::string(i + 1 < r.size() ? width[i] - r[i].size() : 0, ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace shimura
