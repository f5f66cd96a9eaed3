#include "hyperarr/report.hpp"

#include <chrono>
#include <memory>
#include <sstream>

#include "hyperarr/error.hpp"
#include "hyperarr/spec.hpp"

namespace hyperarr {

Json element_json(const CyclotomicNumber& c) {
  Json out = Json::array();
  for (const auto& s : c.coeff_strings()) out.push_back(s);
  return out;
}

Json form_json(const LinearForm& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(element_json(c));
  const auto names = coordinate_names(f.ambient());
  return Json{{"text", f.to_string(names)}, {"coeffs", std::move(coeffs)}};
}

Json subspace_json(const Subspace& x) {
  Json forms = Json::array();
  for (const auto& row : x.forms()) forms.push_back(form_json(LinearForm(row)));
  return Json{{"dim", x.dim()}, {"forms", std::move(forms)}};
}

Json flat_json(const IntersectionLattice& lat, FlatId id) {
  const Flat& f = lat.flat(id);
  Json support = Json::array();
  for (std::size_t h : f.support.indices()) support.push_back(h);
  Json forms = Json::array();
  for (const auto& row : f.subspace.forms()) forms.push_back(form_json(LinearForm(row)));
  return Json{{"id", id}, {"rank", f.rank}, {"support", std::move(support)},
              {"forms", std::move(forms)}};
}

Json verdict_json(const IntersectionLattice& lat, const ModularityVerdict& v) {
  Json out{{"flat", flat_json(lat, v.flat)}, {"modular", v.modular}};
  if (v.witness && v.sum)
    out["witness"] = Json{{"y", flat_json(lat, *v.witness)}, {"sum", subspace_json(*v.sum)}};
  return out;
}

Json arrangement_json(const Arrangement& a, bool with_forms) {
  Json out{{"ambient", a.ambient()},
           {"field_order", a.field_order()},
           {"hyperplanes", a.size()},
           {"duplicates_removed", a.duplicates_removed()},
           {"rank", a.rank()},
           {"essential", a.is_essential()},
           {"content_hash", a.content_hash()}};
  if (with_forms) {
    Json forms = Json::array();
    for (const auto& f : a.hyperplanes()) forms.push_back(form_json(f));
    out["forms"] = std::move(forms);
  }
  return out;
}

namespace {
const char* refutation_name(SupersolvabilityCertificate::Refutation r) {
  switch (r) {
    case SupersolvabilityCertificate::Refutation::EmptyRank: return "empty-rank";
    case SupersolvabilityCertificate::Refutation::NoChain: return "no-chain";
    case SupersolvabilityCertificate::Refutation::None: break;
  }
  return "none";
}
}  // namespace

Json certificate_json(const SupersolvabilityCertificate& cert) {
  const auto& lat = *cert.lattice;
  Json out{{"supersolvable", cert.supersolvable},
           {"essentialized", cert.essentialized},
           {"rank", lat.rank()}};
  if (cert.essentialized) out["essential_arrangement"] = arrangement_json(cert.arrangement, true);
  Json chain = Json::array();
  for (FlatId id : cert.chain) chain.push_back(flat_json(lat, id));
  out["chain"] = std::move(chain);
  Json by_rank = Json::array();
  for (std::size_t k = 0; k < cert.modular_by_rank.size(); ++k) {
    Json flats = Json::array();
    for (FlatId id : cert.modular_by_rank[k]) flats.push_back(flat_json(lat, id));
    by_rank.push_back(Json{{"rank", k}, {"count", cert.modular_by_rank[k].size()},
                           {"flats", std::move(flats)}});
  }
  out["modular_by_rank"] = std::move(by_rank);
  out["refutation"] = refutation_name(cert.refutation);
  if (cert.refutation == SupersolvabilityCertificate::Refutation::EmptyRank) {
    out["refuted_rank"] = cert.refuted_rank;
    Json witnesses = Json::array();
    for (const auto& w : cert.witnesses) witnesses.push_back(verdict_json(lat, w));
    out["witnesses"] = std::move(witnesses);
  }
  return out;
}

std::string polynomial_text(const std::vector<std::int64_t>& coeffs) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const std::int64_t c = coeffs[k];
    if (c == 0) continue;
    const std::int64_t mag = c < 0 ? -c : c;
    if (first) out << (c < 0 ? "-" : "");
    else out << (c < 0 ? " - " : " + ");
    if (k == 0 || mag != 1) out << mag;
    if (k >= 1) out << 't';
    if (k >= 2) out << '^' << k;
    first = false;
  }
  if (first) out << '0';
  return out.str();
}

Json polynomial_json(const std::vector<std::int64_t>& coeffs) {
  return Json{{"coefficients", coeffs}, {"text", polynomial_text(coeffs)}};
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

bool all_scalars(const Json& arr) {
  for (const auto& e : arr)
    if (!is_scalar(e)) return false;
  return true;
}

std::string scalar_list(const Json& arr) {
  std::string out = "[";
  bool first = true;
  for (const auto& e : arr) {
    if (!first) out += ", ";
    out += scalar_text(e);
    first = false;
  }
  return out + "]";
}

void render_object(const Json& obj, std::size_t indent, std::ostringstream& out);

void render_array_items(const Json& arr, std::size_t indent, std::ostringstream& out) {
  const std::string pad(indent, ' ');
  for (const auto& e : arr) {
    if (e.is_object() && !e.empty()) {
      std::ostringstream item;
      render_object(e, indent + 2, item);
      out << pad << "- " << item.str().substr(indent + 2);
    } else if (e.is_array() && all_scalars(e)) {
      out << pad << "- " << scalar_list(e) << '\n';
    } else if (e.is_array()) {
      out << pad << "-\n";
      render_array_items(e, indent + 2, out);
    } else {
      out << pad << "- " << scalar_text(e) << '\n';
    }
  }
}

void render_object(const Json& obj, std::size_t indent, std::ostringstream& out) {
  const std::string pad(indent, ' ');
  for (const auto& [key, val] : obj.items()) {
    if (key == "coeffs") continue;
    if (is_scalar(val)) {
      out << pad << key << ": " << scalar_text(val) << '\n';
    } else if (val.is_array() && all_scalars(val)) {
      out << pad << key << ": " << scalar_list(val) << '\n';
    } else if (val.is_array()) {
      out << pad << key << ":" << (val.empty() ? " []" : "") << '\n';
      render_array_items(val, indent + 2, out);
    } else {
      out << pad << key << ":\n";
      render_object(val, indent + 2, out);
    }
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  if (report.is_object()) render_object(report, 0, out);
  else out << report.dump() << '\n';
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

struct Prepared {
  Arrangement input{0, 1};
  Arrangement working{0, 1};  // essentialized when the input is not essential
  bool essentialized = false;
};

Prepared prepare(const std::string& spec, bool essential) {
  Prepared p;
  p.input = resolve_spec(spec);
  p.working = p.input;
  if (essential && !p.input.is_essential()) {
    p.working = essentialize(p.input);
    p.essentialized = true;
  }
  return p;
}

Json header(const char* command, const std::string& spec, const Arrangement& a, bool forms) {
  return Json{{"command", command}, {"spec", spec}, {"arrangement", arrangement_json(a, forms)}};
}

void finish(const CommandContext& ctx, Json& report, Clock::time_point t0) {
  if (ctx.timing)
    report["timing"] =
        Json{{"seconds", std::chrono::duration<double>(Clock::now() - t0).count()}};
}

std::shared_ptr<const IntersectionLattice> lattice_for(const CommandContext& ctx,
                                                        const Arrangement& a) {
  return std::make_shared<const IntersectionLattice>(cached_lattice(a, ctx.lattice, ctx.cache));
}

AnalysisOptions analysis_options(const CommandContext& ctx) {
  AnalysisOptions o;
  o.lattice = ctx.lattice;
  o.method = ctx.method;
  return o;
}

}  // namespace

CommandResult cmd_build(const CommandContext& ctx, const std::string& spec) {
  const auto t0 = Clock::now();
  const Prepared p = prepare(spec, false);
  CommandResult r{header("build", spec, p.input, true), 0};
  finish(ctx, r.report, t0);
  return r;
}

CommandResult cmd_lattice(const CommandContext& ctx, const std::string& spec) {
  const auto t0 = Clock::now();
  const Prepared p = prepare(spec, false);
  const auto lat = lattice_for(ctx, p.input);
  CommandResult r{header("lattice", spec, p.input, false), 0};
  r.report["lattice"] =
      Json{{"rank", lat->rank()}, {"flats", lat->size()}, {"level_sizes", lat->level_sizes()}};
  finish(ctx, r.report, t0);
  return r;
}

CommandResult cmd_modular(const CommandContext& ctx, const std::string& spec,
                          std::optional<std::size_t> rank) {
  const auto t0 = Clock::now();
  const Prepared p = prepare(spec, true);
  const auto lat = lattice_for(ctx, p.working);
  if (rank && *rank > lat->rank())
    throw DomainError("--rank " + std::to_string(*rank) + " exceeds r(A) = " +
                      std::to_string(lat->rank()));
  CommandResult r{header("modular", spec, p.input, false), 0};
  r.report["essentialized"] = p.essentialized;
  if (p.essentialized) r.report["essential_arrangement"] = arrangement_json(p.working, true);
  Json ranks = Json::array();
  const std::size_t lo = rank ? *rank : 0;
  const std::size_t hi = rank ? *rank : lat->rank();
  for (std::size_t k = lo; k <= hi; ++k) {
    const auto verdicts = modular_flats_of_rank(p.working, *lat, k, ctx.method, ctx.lattice.threads);
    Json modular = Json::array();
    Json non_modular = Json::array();
    for (const auto& v : verdicts) {
      if (v.modular) modular.push_back(flat_json(*lat, v.flat));
      else non_modular.push_back(verdict_json(*lat, v));
    }
    ranks.push_back(Json{{"rank", k},
                         {"flats", verdicts.size()},
                         {"modular_count", modular.size()},
                         {"modular", std::move(modular)},
                         {"non_modular", std::move(non_modular)}});
  }
  r.report["ranks"] = std::move(ranks);
  finish(ctx, r.report, t0);
  return r;
}

CommandResult cmd_supersolvable(const CommandContext& ctx, const std::string& spec) {
  const auto t0 = Clock::now();
  const Prepared p = prepare(spec, true);
  auto cert = is_supersolvable(p.working, lattice_for(ctx, p.working), analysis_options(ctx));
  cert.essentialized = p.essentialized;
  const std::string recheck = recheck_certificate(cert);
  CommandResult r{header("supersolvable", spec, p.input, false), recheck.empty() ? 0 : 1};
  r.report["certificate"] = certificate_json(cert);
  r.report["recheck"] = recheck.empty() ? "ok" : recheck;
  finish(ctx, r.report, t0);
  return r;
}

CommandResult cmd_rank2_criterion(const CommandContext& ctx, const std::string& spec) {
  const auto t0 = Clock::now();
  const Prepared p = prepare(spec, false);
  const auto report = check_rank2_criterion(p.input, analysis_options(ctx));
  CommandResult r{header("rank2-criterion", spec, p.input, false), report.agree() ? 0 : 1};
  Json rank2 = Json::array();
  std::size_t modular = 0;
  for (const auto& v : report.rank2) {
    rank2.push_back(verdict_json(*report.certificate.lattice, v));
    modular += v.modular ? 1 : 0;
  }
  r.report["criterion"] = Json{{"supersolvable", report.supersolvable},
                               {"has_modular_rank2", report.has_modular_rank2},
                               {"agree", report.agree()},
                               {"modular_rank2_count", modular}};
  r.report["certificate"] = certificate_json(report.certificate);
  r.report["rank2"] = std::move(rank2);
  finish(ctx, r.report, t0);
  return r;
}

CommandResult cmd_poincare(const CommandContext& ctx, const std::string& spec) {
  const auto t0 = Clock::now();
  const Prepared p = prepare(spec, true);
  const auto lat = lattice_for(ctx, p.working);
  const auto poly = poincare(*lat);
  const auto cert = is_supersolvable(p.working, lat, analysis_options(ctx));
  const auto factors = factor_poincare(poly);
  CommandResult r{header("poincare", spec, p.input, false), 0};
  r.report["essentialized"] = p.essentialized;
  r.report["poincare"] = polynomial_json(poly);
  r.report["supersolvable"] = cert.supersolvable;
  r.report["factors_over_z"] = factors ? Json(*factors) : Json(nullptr);
  if (cert.supersolvable) {
    if (!factors) {
      r.exit_code = 1;
      r.report["exponents"] = nullptr;
      r.report["error"] = "supersolvable but the Poincare polynomial does not factor over Z";
    } else {
      r.report["exponents"] = *factors;
    }
  } else {
    r.report["exponents"] = nullptr;
  }
  finish(ctx, r.report, t0);
  return r;
}

CommandResult cmd_decompose(const CommandContext& ctx, const std::string& spec) {
  const auto t0 = Clock::now();
  const Prepared p = prepare(spec, true);
  const auto blocks = irreducible_blocks(p.working);
  const auto factors = irreducible_decomposition(p.working);
  CommandResult r{header("decompose", spec, p.input, false), 0};
  r.report["essentialized"] = p.essentialized;
  Json out = Json::array();
  for (std::size_t k = 0; k < factors.size(); ++k)
    out.push_back(Json{{"hyperplane_indices", blocks[k]},
                       {"arrangement", arrangement_json(factors[k], true)}});
  r.report["irreducible"] = factors.size() == 1;
  r.report["factors"] = std::move(out);
  finish(ctx, r.report, t0);
  return r;
}

CommandResult cmd_verify_paper(const CommandContext& ctx, const std::string& scope) {
  const auto t0 = Clock::now();
  const auto rows = run_verification(scope, analysis_options(ctx));
  CommandResult r{Json{{"command", "verify-paper"}, {"scope", scope}}, 0};
  Json out = Json::array();
  std::size_t passed = 0;
  for (const auto& row : rows) {
    Json j{{"id", row.id}, {"kind", row.kind}, {"passed", row.passed}, {"detail", row.detail}};
    if (ctx.timing) j["seconds"] = row.seconds;
    out.push_back(std::move(j));
    passed += row.passed ? 1 : 0;
  }
  r.report["claims"] = std::move(out);
  r.report["summary"] =
      Json{{"total", rows.size()}, {"passed", passed}, {"failed", rows.size() - passed}};
  if (passed != rows.size()) r.exit_code = 1;
  finish(ctx, r.report, t0);
  return r;
}

}  // namespace hyperarr
