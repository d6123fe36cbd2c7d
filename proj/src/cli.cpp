#include "realop/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <typeinfo>
#include <utility>
#include <vector>

#if __has_include(<cxxabi.h>)
#include <cxxabi.h>
#define REALOP_HAVE_CXXABI 1
#endif

#include "json.hpp"

#include "realop/errors.hpp"
#include "realop/lattice.hpp"
#include "realop/linalg.hpp"
#include "realop/poincare.hpp"
#include "realop/spectral.hpp"
#include "realop/states.hpp"
#include "realop/structures.hpp"
#include "realop/vnalg.hpp"

namespace realop {
namespace {

using njson = nlohmann::ordered_json;

/// Unqualified class name of an exception, for report lines like
/// "extract-j: TimeTranslationNotInjective: ...".
std::string error_name(const std::exception& e) {
  std::string out = typeid(e).name();
#ifdef REALOP_HAVE_CXXABI
  int status = 0;
  char* dem = abi::__cxa_demangle(out.c_str(), nullptr, nullptr, &status);
  if (status == 0 && dem) out = dem;
  std::free(dem);
#endif
  const auto pos = out.rfind("::");
  return pos == std::string::npos ? out : out.substr(pos + 2);
}

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

njson bundle_json(const MatrixBundle& b) {
  njson mats = njson::object();
  njson tags = njson::object();
  for (const auto& e : b.entries) {
    njson rows = njson::array();
    for (Index i = 0; i < e.matrix.rows(); ++i) {
      njson row = njson::array();
      for (Index j = 0; j < e.matrix.cols(); ++j) row.push_back(e.matrix(i, j));
      rows.push_back(std::move(row));
    }
    mats[e.name] = std::move(rows);
    if (!e.tag.empty()) tags[e.name] = e.tag;
  }
  njson out = njson::object();
  out["dim"] = static_cast<long long>(b.dim);
  out["matrices"] = std::move(mats);
  if (!tags.empty()) out["tags"] = std::move(tags);
  return out;
}

/// Accumulates the same report in both surfaces: ordered JSON for --json and
/// key: value text otherwise. Handlers that reach a negative verdict without
/// throwing set exit_code and fail directly.
struct ReportBuilder {
  njson doc = njson::object();
  std::ostringstream text;
  int exit_code = 0;
  std::string fail;

  void str(const char* key, const std::string& v) {
    doc[key] = v;
    text << key << ": " << v << '\n';
  }
  void num(const char* key, double v) {
    doc[key] = v;
    text << key << ": " << fmt_num(v) << '\n';
  }
  void count(const char* key, long long v) {
    doc[key] = v;
    text << key << ": " << v << '\n';
  }
  void flag(const char* key, bool v) {
    doc[key] = v;
    text << key << ": " << (v ? "yes" : "no") << '\n';
  }
  void line(const std::string& s) { text << s << '\n'; }

  void matrices(const MatrixBundle& out) {
    doc["bundle"] = bundle_json(out);
    const Eigen::IOFormat fmt(Eigen::FullPrecision, Eigen::DontAlignCols, " ",
                              "\n", "  ", "", "", "");
    for (const auto& e : out.entries) {
      text << e.name;
      if (!e.tag.empty()) text << " [" << e.tag << "]";
      text << ":\n" << e.matrix.format(fmt) << '\n';
    }
  }
};

std::vector<Matd> all_matrices(const MatrixBundle& b) {
  std::vector<Matd> out;
  out.reserve(b.entries.size());
  for (const auto& e : b.entries) out.push_back(e.matrix);
  return out;
}

const BundleEntry& sole_entry(const MatrixBundle& b, const char* cmd) {
  if (b.entries.size() != 1)
    throw ParseError(std::string(cmd) + ": expects exactly one matrix, got " +
                     std::to_string(b.entries.size()));
  return b.entries.front();
}

bool is_generator_tag(const std::string& tag) {
  return !tag.empty() && tag != "structure" && tag != "density";
}

PoincareRep rep_from_bundle(const MatrixBundle& b, const CliOptions& opt,
                            const char* cmd) {
  std::map<std::string, Matd> gens;
  for (const auto& e : b.entries) {
    if (!is_generator_tag(e.tag)) continue;
    if (gens.count(e.tag))
      throw ParseError(std::string(cmd) + ": two matrices tagged " + e.tag);
    gens[e.tag] = e.matrix;
  }
  if (gens.empty())
    throw ParseError(std::string(cmd) + ": no generator-tagged matrices");
  return make_poincare_rep(std::move(gens), 1.0, opt.tol);
}

const char* kind_name(CommutantKind k) {
  switch (k) {
    case CommutantKind::RealReal: return "RealReal";
    case CommutantKind::RealComplex: return "RealComplex";
    default: return "RealQuaternionic";
  }
}

const char* verdict_name(UniquenessVerdict v) {
  switch (v) {
    case UniquenessVerdict::UniqueUpToSign: return "UniqueUpToSign";
    case UniquenessVerdict::NotUnique: return "NotUnique";
    default: return "Inconclusive";
  }
}

void cmd_commutant(const MatrixBundle& b, const CliOptions& opt,
                   ReportBuilder& rb) {
  const OperatorAlgebra com = commutant(all_matrices(b), b.dim, opt.tol);
  rb.count("generators", static_cast<long long>(b.entries.size()));
  rb.count("ambient_dim", b.dim);
  rb.count("commutant_dim", com.dim());
  std::vector<BundleEntry> out;
  for (std::size_t i = 0; i < com.basis.size(); ++i)
    out.push_back({"c" + std::to_string(i), com.basis[i], ""});
  rb.matrices(make_bundle(b.dim, std::move(out)));
}

void cmd_classify(const MatrixBundle& b, const CliOptions& opt,
                  ReportBuilder& rb) {
  const CommutantClassification cls = classify(all_matrices(b), b.dim, opt.tol);
  rb.str("kind", kind_name(cls.kind));
  rb.count("commutant_dim", cls.commutant_dim);
  std::vector<BundleEntry> out;
  const Matd id = Matd::Identity(b.dim, b.dim);
  if (cls.j) {
    rb.num("square_residual", operator_norm(cls.j->j * cls.j->j + id));
    out.push_back({"j", cls.j->j, "structure"});
  }
  if (cls.k) {
    rb.num("anticommutator_residual",
           operator_norm(cls.j->j * cls.k->j + cls.k->j * cls.j->j));
    out.push_back({"k", cls.k->j, "structure"});
  }
  if (!out.empty()) rb.matrices(make_bundle(b.dim, std::move(out)));
}

void cmd_polar(const MatrixBundle& b, const CliOptions& opt,
               ReportBuilder& rb) {
  const BundleEntry& e = sole_entry(b, "polar");
  const PolarDecomposition pd = polar(e.matrix, opt.tol);
  rb.count("kernel_dim", pd.kernel_dim);
  rb.num("reconstruction_residual", operator_norm(e.matrix - pd.u * pd.p));
  rb.matrices(make_bundle(b.dim, {{"u", pd.u, ""}, {"p", pd.p, ""}}));
}

void cmd_pvm(const MatrixBundle& b, const CliOptions& opt, ReportBuilder& rb) {
  const BundleEntry& e = sole_entry(b, "pvm");
  const Pvm v = pvm_of(e.matrix, opt.tol);
  rb.count("blocks", static_cast<long long>(v.blocks.size()));
  njson eigenvalues = njson::array();
  njson multiplicities = njson::array();
  Matd sum = Matd::Zero(b.dim, b.dim);
  double cross = 0;
  std::vector<BundleEntry> out;
  for (std::size_t i = 0; i < v.blocks.size(); ++i) {
    const PvmBlock& blk = v.blocks[i];
    eigenvalues.push_back(blk.eigenvalue);
    multiplicities.push_back(static_cast<long long>(blk.multiplicity));
    rb.line("block " + std::to_string(i) + ": eigenvalue " +
            fmt_num(blk.eigenvalue) + ", multiplicity " +
            std::to_string(blk.multiplicity));
    sum += blk.projector;
    for (std::size_t k = 0; k < i; ++k)
      cross = std::max(cross, operator_norm(v.blocks[k].projector * blk.projector));
    out.push_back({"block" + std::to_string(i), blk.projector, ""});
  }
  rb.doc["eigenvalues"] = std::move(eigenvalues);
  rb.doc["multiplicities"] = std::move(multiplicities);
  rb.num("completeness_residual",
         operator_norm(sum - Matd::Identity(b.dim, b.dim)));
  rb.num("orthogonality_residual", cross);
  rb.matrices(make_bundle(b.dim, std::move(out)));
}

void cmd_lattice(const MatrixBundle& b, const CliOptions& opt,
                 ReportBuilder& rb) {
  const OperatorAlgebra alg = generate_algebra(all_matrices(b), opt.tol);
  const LatticeGapReport gap = lattice_double_commutant_gap(alg, opt.tol, opt.seed);
  rb.count("algebra_dim", gap.algebra_dim);
  rb.count("lattice_double_commutant_dim", gap.lattice_double_commutant_dim);
  rb.flag("gap", gap.lattice_double_commutant_dim != gap.algebra_dim);
  rb.count("witnesses", static_cast<long long>(gap.witnesses.size()));
  std::vector<BundleEntry> out;
  for (std::size_t i = 0; i < gap.witnesses.size(); ++i)
    out.push_back({"w" + std::to_string(i), gap.witnesses[i], ""});
  rb.matrices(make_bundle(b.dim, std::move(out)));
}

void cmd_gleason(const MatrixBundle& b, const CliOptions& opt,
                 ReportBuilder& rb) {
  const BundleEntry* e = b.first_with_tag("density");
  if (!e) throw ParseError("gleason: no matrix tagged density");
  const DensityOperator t = make_density(e->matrix, opt.tol);
  const StateMeasure mu = measure_of(t, opt.tol);
  const DensityOperator back = density_from_measure(mu, b.dim, opt.tol);
  rb.count("probes", static_cast<long long>(polarization_frame(b.dim).size()));
  rb.num("roundtrip_residual", operator_norm(back.t - t.t));
  rb.matrices(make_bundle(b.dim, {{"reconstructed", back.t, "density"}}));
}

void cmd_extract_j(const MatrixBundle& b, const CliOptions& opt,
                   ReportBuilder& rb) {
  const PoincareRep rep = rep_from_bundle(b, opt, "extract-j");
  const EmergentStructure es = extract_complex_structure(rep, opt.tol);
  rb.str("uniqueness", verdict_name(es.uniqueness_verdict));
  const bool full_momenta = rep.gens.count("p0") && rep.gens.count("p1") &&
                            rep.gens.count("p2") && rep.gens.count("p3");
  if (full_momenta) {
    const SquaredMass sm = squared_mass(rep, opt.tol);
    rb.flag("squared_mass_scalar", sm.scalar);
    if (sm.scalar) rb.num("squared_mass", sm.value);
  }
  njson residuals = njson::object();
  for (const auto& [label, r] : es.commutation_residuals) {
    residuals[label] = r;
    rb.line("[j, " + label + "] residual: " + fmt_num(r));
  }
  rb.doc["commutation_residuals"] = std::move(residuals);
  std::vector<BundleEntry> out;
  out.push_back({"j", es.j.j, "structure"});
  out.push_back({"h", es.h, ""});
  for (const auto& [label, obs] : es.observables)
    out.push_back({"obs_" + label, obs, ""});
  rb.matrices(make_bundle(b.dim, std::move(out)));
}

void cmd_poincare_check(const MatrixBundle& b, const CliOptions& opt,
                        ReportBuilder& rb) {
  const PoincareRep rep = rep_from_bundle(b, opt, "poincare-check");
  const RelationReport report = check_relations(rep, 1e-8, opt.tol);
  njson relations = njson::array();
  long long skipped = 0;
  for (const auto& rc : report.relations) {
    njson one = njson::object();
    one["first"] = rc.first;
    one["second"] = rc.second;
    one["skipped"] = rc.skipped;
    if (!rc.skipped) one["residual"] = rc.residual;
    relations.push_back(std::move(one));
    if (rc.skipped) {
      ++skipped;
      continue;
    }
    rb.line("[" + rc.first + ", " + rc.second + "] residual: " +
            fmt_num(rc.residual));
  }
  rb.doc["relations"] = std::move(relations);
  rb.count("skipped", skipped);
  rb.num("max_residual", report.max_residual);
  rb.num("threshold", report.threshold);
  rb.flag("trivial", report.trivial);
  rb.flag("pass", report.pass);
  if (!report.pass) {
    rb.exit_code = 2;
    rb.fail = "poincare-check: max residual " + fmt_num(report.max_residual) +
              " exceeds threshold " + fmt_num(report.threshold);
  }
}

void cmd_trace_factor(const MatrixBundle& b, const CliOptions& opt,
                      ReportBuilder& rb) {
  std::vector<const BundleEntry*> structures;
  std::vector<const BundleEntry*> operators;
  for (const auto& e : b.entries)
    (e.tag == "structure" ? structures : operators).push_back(&e);
  if (operators.size() != 1)
    throw ParseError("trace-factor: expects exactly one operator matrix, got " +
                     std::to_string(operators.size()));
  if (structures.size() > 2)
    throw ParseError("trace-factor: at most two structure-tagged matrices");
  const Matd& a = operators.front()->matrix;
  const double plain = trace_in_structure(a, opt.tol);
  double value = plain;
  long long factor = 1;
  if (structures.size() == 1) {
    const ComplexStructure j =
        make_complex_structure(structures[0]->matrix, opt.tol);
    value = trace_in_structure(a, j, opt.tol);
    factor = 2;
  } else if (structures.size() == 2) {
    const QuaternionicPair q = make_quaternionic_pair(
        make_complex_structure(structures[0]->matrix, opt.tol),
        make_complex_structure(structures[1]->matrix, opt.tol), opt.tol);
    value = trace_in_structure(a, q, opt.tol);
    factor = 4;
  }
  rb.count("factor", factor);
  rb.num("trace", plain);
  rb.num("value", value);
}

using Handler = void (*)(const MatrixBundle&, const CliOptions&, ReportBuilder&);

const std::map<std::string, Handler>& command_table() {
  static const std::map<std::string, Handler> table = {
      {"commutant", cmd_commutant},
      {"classify", cmd_classify},
      {"polar", cmd_polar},
      {"pvm", cmd_pvm},
      {"lattice", cmd_lattice},
      {"gleason", cmd_gleason},
      {"extract-j", cmd_extract_j},
      {"poincare-check", cmd_poincare_check},
      {"trace-factor", cmd_trace_factor},
  };
  return table;
}

CommandOutcome failed(const std::string& cmd, const CliOptions& opt, int code,
                      const Error& e) {
  CommandOutcome out;
  out.exit_code = code;
  out.error = cmd + ": " + error_name(e) + ": " + e.what();
  if (opt.json) {
    njson doc = njson::object();
    doc["command"] = cmd;
    njson err = njson::object();
    err["name"] = error_name(e);
    err["detail"] = e.what();
    doc["error"] = std::move(err);
    out.report = doc.dump(2) + "\n";
  }
  return out;
}

}  // namespace

CommandOutcome run_command(const std::string& cmd, const MatrixBundle& bundle,
                           const CliOptions& options) {
  const auto& table = command_table();
  const auto it = table.find(cmd);
  if (it == table.end()) {
    std::string known;
    for (const auto& [name, handler] : table) known += " " + name;
    throw UnknownCommand("unknown command " + cmd + "; known:" + known);
  }
  if (!options.tol.valid())
    throw ParseError("tolerances must be positive");

  ReportBuilder rb;
  rb.str("command", cmd);
  try {
    it->second(bundle, options, rb);
  } catch (const InputError& e) {
    return failed(cmd, options, 1, e);
  } catch (const VerdictError& e) {
    return failed(cmd, options, 2, e);
  }
  CommandOutcome out;
  out.exit_code = rb.exit_code;
  out.error = rb.fail;
  out.report = options.json ? rb.doc.dump(2) + "\n" : rb.text.str();
  return out;
}

}  // namespace realop
