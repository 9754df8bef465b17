#include "shimura/analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <json.hpp>

#include "shimura/error.hpp"

namespace shimura {

namespace {

Rational frac(const Rational& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational out = q - Rational(fl);
  out.canonicalize();
  return out;
}

// zeta_m^nu / (1 - zeta_m^nu)
const Cyclotomic& eichler_summand(int m, int nu) {
  thread_local std::map<std::pair<int, int>, Cyclotomic> cache;
  auto key = std::make_pair(m, nu);
  auto it = cache.find(key);
  if (it == cache.end()) {
    Cyclotomic z = Cyclotomic::zeta(m, nu);
    it = cache.emplace(key, z / (Cyclotomic(1) - z)).first;
  }
  return it->second;
}

int tuple_genus(const FiniteGroup& g, const Tuple& x) {
  auto o = tuple_orders(g, x);
  std::sort(o.begin(), o.end());
  return genus_from_rh(g.order(), o);
}

}  // namespace

HodgeDecomposition chevalley_weil(const CharacterTable& t, const Tuple& x) {
  const FiniteGroup& g = *t.group;
  HodgeDecomposition h;
  h.genus = tuple_genus(g, x);
  std::vector<EigenvalueProfile> profiles;
  for (int xi : x) profiles.push_back(eigenvalue_profile(t, xi));
  for (int chi = 0; chi < t.size(); ++chi) {
    Rational mu = -t.degrees[chi];
    for (const auto& p : profiles)
      for (int a = 0; a < p.order; ++a)
        if (p.counts[chi][a]) mu += p.counts[chi][a] * frac(Rational(-a, p.order));
    if (chi == t.trivial_index) mu += 1;
    mu.canonicalize();
    if (mu.get_den() != 1) fail(ErrorCode::NotIntegral, "Chevalley-Weil multiplicity is not an integer");
    if (mu < 0) fail(ErrorCode::NegativeMultiplicity, "negative Chevalley-Weil multiplicity");
    h.multiplicities.push_back(static_cast<int>(mu.get_num().get_si()));
  }
  const int k = t.classes().size();
  h.chi_rho.assign(k, Cyclotomic(0));
  long long dim = 0;
  for (int chi = 0; chi < t.size(); ++chi) {
    const int mu = h.multiplicities[chi];
    if (!mu) continue;
    dim += static_cast<long long>(mu) * t.degrees[chi];
    for (int c = 0; c < k; ++c) h.chi_rho[c] += scale(t.chars[chi][c], Rational(mu));
  }
  if (dim != h.genus) fail(ErrorCode::Internal, "sum of mu * degree differs from the genus");
  return h;
}

long long fix_count(const FiniteGroup& g, const Tuple& x, int element, int nu) {
  if (element <= 0 || element >= g.order()) fail(ErrorCode::InvalidArgument, "fix_count needs a non-identity element");
  const int m = g.element_order(element);
  if (nu < 1 || nu >= m || std::gcd(nu, m) != 1) fail(ErrorCode::InvalidArgument, "nu must lie in I(m)");
  const auto& cd = g.conjugacy();
  const int c = cd.class_of[element];
  Rational s = 0;
  for (int xi : x) {
    const int mi = g.element_order(xi);
    if (mi % m) continue;
    if (cd.class_of[g.pow(xi, static_cast<long long>(mi / m) * nu)] == c) s += Rational(1, mi);
  }
  s *= cd.centralizer_order[c];
  s.canonicalize();
  if (s.get_den() != 1) fail(ErrorCode::NotIntegral, "fixed point count is not an integer");
  return s.get_num().get_si();
}

Cyclotomic eichler_trace(const FiniteGroup& g, const Tuple& x, int element) {
  const int genus = tuple_genus(g, x);
  if (genus <= 1) fail(ErrorCode::GenusTooSmall, "trace formula needs genus > 1, got " + std::to_string(genus));
  if (element <= 0 || element >= g.order()) fail(ErrorCode::InvalidArgument, "trace formula needs a non-identity element");
  const int m = g.element_order(element);
  Cyclotomic v(1);
  for (int nu = 1; nu < m; ++nu) {
    if (std::gcd(nu, m) != 1) continue;
    long long f = fix_count(g, x, element, nu);
    if (f) v += scale(eichler_summand(m, nu), Rational(static_cast<long>(f)));
  }
  return v;
}

long long compute_N(const CharacterTable& t, const HodgeDecomposition& h) {
  const auto& cd = t.classes();
  Cyclotomic s;
  for (int c = 0; c < cd.size(); ++c) {
    const Cyclotomic& v = h.chi_rho[c];
    s += scale(v * v + h.chi_rho[cd.power_map(c, 2)], Rational(cd.class_size(c)));
  }
  return scale(s, Rational(1, 2 * t.group->order())).as_integer();
}

long long compute_N_realform(const CharacterTable& t, const HodgeDecomposition& h) {
  const auto& cd = t.classes();
  const long n = t.group->order();
  const long g = h.genus;
  long g0 = 0;
  Cyclotomic sum0, sum1;
  for (int c = 1; c < cd.size(); ++c) {
    const Cyclotomic& v = h.chi_rho[c];
    if (cd.element_order[c] == 2) {
      g0 += cd.class_size(c);
      sum0 += scale(v * v, Rational(cd.class_size(c)));
      continue;
    }
    const int inv = cd.inverse_class[c];
    Rational weight;
    if (inv == c) {
      weight = Rational(cd.class_size(c), 2);
    } else if (c < inv) {
      weight = cd.class_size(c);
    } else {
      continue;
    }
    sum1 += scale((h.chi_rho[cd.power_map(c, 2)] + v * v).real_part(), weight);
  }
  Cyclotomic total(Rational(g + g * g + g0 * g, 2 * n));
  total += scale(sum0, Rational(1, 2 * n));
  total += scale(sum1, Rational(1, n));
  return total.as_integer();
}

long long compute_N_checked(const CharacterTable& t, const HodgeDecomposition& h) {
  long long a = compute_N(t, h);
  long long b = compute_N_realform(t, h);
  if (a != b)
    fail(ErrorCode::MismatchWithNCW, "N = " + std::to_string(a) + " by classes but " + std::to_string(b) + " by the real form");
  return a;
}

long long subgroup_N(const FiniteGroup& g, const ClassFunction& chi_rho, const std::vector<int>& h_members) {
  const auto& cd = g.conjugacy();
  std::vector<long long> weight(cd.size(), 0), weight_sq(cd.size(), 0);
  for (int y : h_members) {
    ++weight[cd.class_of[y]];
    ++weight_sq[cd.class_of[g.mul(y, y)]];
  }
  Cyclotomic s;
  for (int c = 0; c < cd.size(); ++c) {
    if (weight[c]) s += scale(chi_rho[c] * chi_rho[c], Rational(static_cast<long>(weight[c])));
    if (weight_sq[c]) s += scale(chi_rho[c], Rational(static_cast<long>(weight_sq[c])));
  }
  return scale(s, Rational(1, 2 * static_cast<long>(h_members.size()))).as_integer();
}

FamilyReport classify(const CharacterTable& t, const Tuple& x) {
  const FiniteGroup& g = *t.group;
  validate_ssg(g, x);
  FamilyReport rep;
  rep.ssg = x;
  rep.hodge = chevalley_weil(t, x);
  rep.genus = rep.hodge.genus;
  rep.r = static_cast<int>(x.size());
  rep.dim = rep.r - 3;
  rep.N = compute_N_checked(t, rep.hodge);
  rep.is_shimura = rep.N == rep.r - 3;
  rep.is_cm_point = rep.r == 3 && rep.N == 0;
  const auto& cd = t.classes();
  for (int c = 0; c < cd.size(); ++c) {
    if (cd.element_order[c] != 2) continue;
    if (rep.hodge.chi_rho[c] == Cyclotomic(-rep.genus)) {
      rep.hyperelliptic_witness = cd.representatives[c];
      break;
    }
  }
  return rep;
}

std::string report_json(const FiniteGroup& g, const FamilyReport& rep) {
  nlohmann::ordered_json j;
  j["genus"] = rep.genus;
  j["r"] = rep.r;
  j["dim"] = rep.dim;
  j["N"] = rep.N;
  j["is_shimura"] = rep.is_shimura;
  j["is_cm_point"] = rep.is_cm_point;
  j["hyperelliptic_witness"] = rep.hyperelliptic_witness < 0 ? nlohmann::ordered_json(nullptr)
                                                            : nlohmann::ordered_json(rep.hyperelliptic_witness);
  j["mu"] = rep.hodge.multiplicities;
  nlohmann::ordered_json chi = nlohmann::ordered_json::object();
  auto names = class_names(g.conjugacy());
  for (std::size_t c = 0; c < names.size(); ++c) chi[names[c]] = rep.hodge.chi_rho[c].str();
  j["chi_rho"] = chi;
  j["ssg"] = rep.ssg;
  return j.dump();
}

}  // namespace shimura
