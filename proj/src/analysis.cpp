#include "hyperarr/analysis.hpp"

#include <functional>
#include <sstream>

#include "hyperarr/error.hpp"
#include "hyperarr/parallel.hpp"
#include "hyperarr/parse.hpp"

namespace hyperarr {

namespace {

void require_flat(const IntersectionLattice& lat, FlatId x) {
  if (x >= lat.size())
    throw DomainError("flat id " + std::to_string(x) + " is not in the lattice");
}

ModularityVerdict failing(const Arrangement& a, const IntersectionLattice& lat, FlatId x,
                          FlatId y, Subspace sum) {
  // Independent certificate: the closure of X + Y must be strictly smaller.
  if (closure(a, sum).subspace == sum)
    throw InternalError("modularity witness does not certify: X + Y is a flat");
  (void)lat;
  return ModularityVerdict{x, false, y, std::move(sum)};
}

}  // namespace

ModularityVerdict is_modular(const Arrangement& a, const IntersectionLattice& lat, FlatId x,
                             ModularityMethod method) {
  require_flat(lat, x);
  const Flat& fx = lat.flat(x);
  for (FlatId y = 0; y < lat.size(); ++y) {
    const Flat& fy = lat.flat(y);
    // Comparable flats sum to the larger subspace, which is a flat.
    if (fy.support.subset_of(fx.support) || fx.support.subset_of(fy.support)) continue;
    if (method == ModularityMethod::RankIdentity) {
      const std::size_t joined = lat.flat(lat.join(x, y)).rank;
      const std::size_t met = lat.flat(lat.meet(x, y)).rank;
      if (fx.rank + fy.rank != joined + met)
        return failing(a, lat, x, y, subspace_sum(fx.subspace, fy.subspace));
    } else {
      Subspace sum = subspace_sum(fx.subspace, fy.subspace);
      if (!(closure(a, sum).subspace == sum)) return ModularityVerdict{x, false, y, std::move(sum)};
    }
  }
  return ModularityVerdict{x, true, std::nullopt, std::nullopt};
}

std::vector<ModularityVerdict> modular_flats_of_rank(const Arrangement& a,
                                                     const IntersectionLattice& lat,
                                                     std::size_t r, ModularityMethod method,
                                                     unsigned threads) {
  if (r > lat.rank())
    throw DomainError("rank " + std::to_string(r) + " exceeds r(A) = " +
                      std::to_string(lat.rank()));
  const FlatId begin = lat.level_begin(r);
  const std::size_t count = lat.level_end(r) - begin;
  std::vector<ModularityVerdict> out(count);
  parallel_for(count, threads, [&](std::size_t i) {
    out[i] = is_modular(a, lat, static_cast<FlatId>(begin + i), method);
  });
  return out;
}

namespace {

bool search_chain(const IntersectionLattice& lat,
                  const std::vector<std::vector<FlatId>>& modular_by_rank,
                  std::vector<FlatId>& chain) {
  std::vector<char> dead(lat.size(), 0);
  const std::size_t top = lat.rank();
  std::function<bool(FlatId, std::size_t)> extend = [&](FlatId cur, std::size_t k) {
    if (k == top) return true;
    for (FlatId next : modular_by_rank[k + 1]) {
      if (dead[next] || !lat.below(cur, next)) continue;
      chain.push_back(next);
      if (extend(next, k + 1)) return true;
      chain.pop_back();
      dead[next] = 1;
    }
    return false;
  };
  chain.assign(1, lat.bottom());
  if (extend(lat.bottom(), 0)) return true;
  chain.clear();
  return false;
}

}  // namespace

SupersolvabilityCertificate is_supersolvable(const Arrangement& a, const AnalysisOptions& opts) {
  if (a.is_essential()) {
    auto lat = std::make_shared<const IntersectionLattice>(build_lattice(a, opts.lattice));
    return is_supersolvable(a, std::move(lat), opts);
  }
  Arrangement ess = essentialize(a);
  auto lat = std::make_shared<const IntersectionLattice>(build_lattice(ess, opts.lattice));
  SupersolvabilityCertificate cert = is_supersolvable(ess, std::move(lat), opts);
  cert.essentialized = true;
  return cert;
}

SupersolvabilityCertificate is_supersolvable(const Arrangement& a,
                                             std::shared_ptr<const IntersectionLattice> lat,
                                             const AnalysisOptions& opts) {
  if (!a.is_essential())
    throw DomainError("is_supersolvable: lattice overload needs an essential arrangement");
  SupersolvabilityCertificate cert;
  cert.arrangement = a;
  cert.lattice = lat;
  const std::size_t r = lat->rank();

  if (r <= 2) {
    cert.supersolvable = true;
    cert.chain.push_back(lat->bottom());
    if (r >= 1) cert.chain.push_back(lat->cover(lat->bottom(), 0));
    if (r == 2) cert.chain.push_back(lat->top());
    return cert;
  }

  std::vector<std::vector<ModularityVerdict>> verdicts(r + 1);
  cert.modular_by_rank.resize(r + 1);
  for (std::size_t k = 0; k <= r; ++k) {
    verdicts[k] = modular_flats_of_rank(a, *lat, k, opts.method, opts.lattice.threads);
    for (const auto& v : verdicts[k])
      if (v.modular) cert.modular_by_rank[k].push_back(v.flat);
  }

  for (std::size_t k = 0; k <= r; ++k) {
    if (!cert.modular_by_rank[k].empty()) continue;
    cert.refutation = SupersolvabilityCertificate::Refutation::EmptyRank;
    cert.refuted_rank = k;
    cert.witnesses = std::move(verdicts[k]);
    return cert;
  }

  if (search_chain(*lat, cert.modular_by_rank, cert.chain)) {
    cert.supersolvable = true;
  } else {
    cert.refutation = SupersolvabilityCertificate::Refutation::NoChain;
  }
  return cert;
}

std::string recheck_certificate(const SupersolvabilityCertificate& cert) {
  const auto& a = cert.arrangement;
  const auto& lat = *cert.lattice;
  std::ostringstream err;
  if (cert.supersolvable) {
    if (cert.chain.size() != lat.rank() + 1) return "chain length differs from r(A) + 1";
    for (std::size_t k = 0; k < cert.chain.size(); ++k) {
      const FlatId id = cert.chain[k];
      if (lat.flat(id).rank != k) return "chain member " + std::to_string(k) + " has wrong rank";
      if (k > 0 && !contains(lat.flat(cert.chain[k - 1]).subspace, lat.flat(id).subspace))
        return "chain is not increasing at position " + std::to_string(k);
      if (!is_modular(a, lat, id, ModularityMethod::SubspaceSum).modular)
        return "chain member " + std::to_string(k) + " is not modular";
    }
    return {};
  }
  switch (cert.refutation) {
    case SupersolvabilityCertificate::Refutation::EmptyRank: {
      if (cert.witnesses.size() != lat.level_sizes()[cert.refuted_rank])
        return "refutation does not cover every flat of the refuted rank";
      for (const auto& w : cert.witnesses) {
        if (w.modular || !w.witness || !w.sum) return "refutation entry without witness";
        const Subspace sum =
            subspace_sum(lat.flat(w.flat).subspace, lat.flat(*w.witness).subspace);
        if (!(sum == *w.sum)) return "recorded sum differs from recomputed X + Y";
        if (closure(a, sum).subspace == sum) return "witness sum is a flat";
      }
      return {};
    }
    case SupersolvabilityCertificate::Refutation::NoChain: {
      std::vector<FlatId> chain;
      if (search_chain(lat, cert.modular_by_rank, chain)) return "a modular chain exists";
      return {};
    }
    case SupersolvabilityCertificate::Refutation::None:
      break;
  }
  return "negative certificate without refutation";
}

std::vector<std::int64_t> mobius(const IntersectionLattice& lat) {
  std::vector<std::int64_t> mu(lat.size(), 0);
  mu[0] = 1;
  for (FlatId x = 1; x < lat.size(); ++x) {
    const Flat& fx = lat.flat(x);
    std::int64_t sum = 0;
    const FlatId below_end = lat.level_begin(fx.rank);
    for (FlatId y = 0; y < below_end; ++y)
      if (lat.flat(y).support.subset_of(fx.support)) sum += mu[y];
    mu[x] = -sum;
  }
  return mu;
}

std::vector<std::int64_t> poincare(const IntersectionLattice& lat) {
  const auto mu = mobius(lat);
  std::vector<std::int64_t> coeffs(lat.rank() + 1, 0);
  for (FlatId x = 0; x < lat.size(); ++x) {
    const std::size_t k = lat.flat(x).rank;
    coeffs[k] += (k % 2 == 0) ? mu[x] : -mu[x];
  }
  return coeffs;
}

std::optional<std::vector<std::int64_t>> factor_poincare(const std::vector<std::int64_t>& p) {
  std::vector<std::int64_t> cur = p;
  while (!cur.empty() && cur.back() == 0) cur.pop_back();
  if (cur.empty() || cur[0] != 1) return std::nullopt;
  std::vector<std::int64_t> roots;
  while (cur.size() > 1) {
    const std::size_t deg = cur.size() - 1;
    const std::int64_t lead = cur[deg];
    if (lead <= 0) return std::nullopt;
    bool peeled = false;
    for (std::int64_t b = 1; b <= lead && !peeled; ++b) {
      if (lead % b != 0) continue;
      // cur = (1 + b t) q: q_0 = 1, q_k = cur_k - b q_{k-1}, cur_deg = b q_{deg-1}.
      std::vector<std::int64_t> q(deg);
      q[0] = cur[0];
      bool ok = true;
      for (std::size_t k = 1; k < deg && ok; ++k) {
        const __int128 v = static_cast<__int128>(cur[k]) - static_cast<__int128>(b) * q[k - 1];
        if (v > INT64_MAX || v < INT64_MIN) ok = false;
        else q[k] = static_cast<std::int64_t>(v);
      }
      if (!ok || static_cast<__int128>(b) * q[deg - 1] != cur[deg]) continue;
      roots.push_back(b);
      cur = std::move(q);
      peeled = true;
    }
    if (!peeled) return std::nullopt;
  }
  return roots;
}

std::vector<std::int64_t> exponents_if_supersolvable(const Arrangement& a,
                                                     const AnalysisOptions& opts) {
  const auto cert = is_supersolvable(a, opts);
  if (!cert.supersolvable)
    throw RefusalError("exponents are only read off the Poincare polynomial of a supersolvable "
                       "arrangement");
  const auto roots = factor_poincare(poincare(*cert.lattice));
  if (!roots)
    throw InternalError("Poincare polynomial of a supersolvable arrangement does not factor over Z");
  return *roots;
}

Rank2CriterionReport check_rank2_criterion(const Arrangement& a, const AnalysisOptions& opts) {
  const bool essentialized = !a.is_essential();
  Arrangement ess = essentialized ? essentialize(a) : a;
  if (ess.ambient() < 2)
    throw RefusalError("rank-2 criterion needs r(A) >= 2, got " + std::to_string(ess.ambient()));
  const auto blocks = irreducible_blocks(ess);
  if (blocks.size() > 1)
    throw RefusalError("arrangement is reducible (" + std::to_string(blocks.size()) +
                       " factors); the rank-2 criterion applies to irreducible "
                       "arrangements only");
  auto lat = std::make_shared<const IntersectionLattice>(build_lattice(ess, opts.lattice));
  Rank2CriterionReport report;
  report.certificate = is_supersolvable(ess, lat, opts);
  report.certificate.essentialized = essentialized;
  report.supersolvable = report.certificate.supersolvable;
  report.rank2 = modular_flats_of_rank(ess, *lat, 2, opts.method, opts.lattice.threads);
  for (const auto& v : report.rank2) report.has_modular_rank2 = report.has_modular_rank2 || v.modular;
  return report;
}

WitnessReplay replay_witness(const Arrangement& a, const std::vector<LinearForm>& x_forms,
                             const std::vector<LinearForm>& y_forms,
                             const std::optional<LinearForm>& expected) {
  WitnessReplay out;
  const std::size_t l = a.ambient();
  const unsigned n = a.field_order();
  out.x = Subspace::from_forms(l, n, x_forms);
  out.y = Subspace::from_forms(l, n, y_forms);
  out.forms_in_arrangement = true;
  for (const auto* list : {&x_forms, &y_forms})
    for (const auto& f : *list) out.forms_in_arrangement = out.forms_in_arrangement && a.contains_hyperplane(f);
  out.sum = subspace_sum(out.x, out.y);
  if (expected) {
    out.expected = *expected;
    out.sum_matches_expected = out.sum == Subspace::from_forms(l, n, std::span(&*expected, 1));
    out.expected_not_in_arrangement = !a.contains_hyperplane(*expected);
  }
  out.closure_of_sum = closure(a, out.sum);
  out.sum_outside_lattice = !(out.closure_of_sum.subspace == out.sum);
  return out;
}

WitnessReplay replay_witness(const Arrangement& a, const std::vector<std::string>& x_forms,
                             const std::vector<std::string>& y_forms,
                             const std::optional<std::string>& expected) {
  auto parse_all = [&](const std::vector<std::string>& in) {
    std::vector<LinearForm> out;
    for (const auto& s : in) out.push_back(parse_form(s, a.ambient(), a.field_order()));
    return out;
  };
  std::optional<LinearForm> e;
  if (expected) e = parse_form(*expected, a.ambient(), a.field_order());
  return replay_witness(a, parse_all(x_forms), parse_all(y_forms), e);
}

std::string WitnessReplay::describe() const {
  std::ostringstream out;
  out << "X = " << to_string(x) << ", Y = " << to_string(y) << ", X + Y = " << to_string(sum);
  if (expected) {
    out << (sum_matches_expected ? " == " : " != ") << "expected {" << expected->to_string() << "}";
    if (!expected_not_in_arrangement) out << " (expected hyperplane IS in A)";
  }
  out << "; closure(X + Y) = " << to_string(closure_of_sum.subspace)
      << (sum_outside_lattice ? " (X + Y not in L(A))" : " (X + Y in L(A))");
  if (!forms_in_arrangement) out << "; some forms of X or Y are not hyperplanes of A";
  return out.str();
}

}  // namespace hyperarr
