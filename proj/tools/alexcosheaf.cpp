// Command-line driver: cover predicates, Kan extensions, cosheaf checks,
// exhaustive theorem sweeps and the interval counterexample.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "alex/cosheaf.hpp"
#include "alex/instance.hpp"
#include "alex/sweep.hpp"

namespace {

using namespace alex;

enum Exit : int { success = 0, verdict_failure = 1, validation_error = 2, size_bound = 3 };

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string cover_text(const Cover& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.members().size(); ++i) s += (i ? ", " : "") + c.members()[i].label();
  return s + "} covering " + c.target().label();
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

int check_cover(const std::string& input, const std::string& name) {
  const InstanceFile file = load(input);
  const Cover& c = file.cover(name);
  std::cout << "cover: yes, cech: " << yes_no(is_cech_cover(c)) << ", basic: " << yes_no(is_basic_cover(c))
            << ", complete: " << yes_no(is_complete_cover(c)) << "\n";
  return success;
}

template <ValueCategory C>
int check_cosheaf_in(const InstanceFile& file, const std::string& name) {
  const CosheafCheck<C> check = cosheaf_arrow(file.precosheaf<C>(), file.cover(name));
  std::cout << "dim F[" << name << "]=" << C::size(check.colimit_side.object) << ", dim F(U)=" << C::size(check.target_value)
            << "; arrow " << (check.verdict ? "is" : "is not") << " an isomorphism\n";
  return check.verdict ? success : verdict_failure;
}

int check_cosheaf(const std::string& input, const std::string& name) {
  const InstanceFile file = load(input);
  if (file.category() == FinSet::name) return check_cosheaf_in<FinSet>(file, name);
  return check_cosheaf_in<Vect>(file, name);
}

template <ValueCategory C>
int kan_in(const InstanceFile& file, const std::string& output) {
  if (file.opens) throw ValidationError("kan needs a diagram over the poset, not over opens");
  if (!file.diagram) throw ValidationError("instance has no diagram");
  const DownSetLattice lattice = down_set_lattice(file.poset);
  const KanExtension<C> ext = hat(std::get<Diagram<C>>(*file.diagram), lattice);
  save(hat_instance(file, ext, lattice), output);
  std::cout << "wrote F̂ over " << lattice.sets.size() << " down-sets to " << output << "\n";
  return success;
}

int kan(const std::string& input, const std::string& output) {
  const InstanceFile file = load(input);
  if (file.category() == FinSet::name) return kan_in<FinSet>(file, output);
  return kan_in<Vect>(file, output);
}

template <ValueCategory C>
int falsify_in(const InstanceFile& file, std::size_t max_cover, CoverFamily family) {
  const auto witness = falsify_refinement(file.precosheaf<C>(), max_cover, family);
  if (!witness) {
    std::cout << "none\n";
    return success;
  }
  std::cout << "witness: fine " << cover_text(witness->fine) << " refines coarse " << cover_text(witness->coarse)
            << "; cosheaf for fine, not for coarse\n";
  return success;
}

int falsify(const std::string& input, std::size_t max_cover, const std::string& family_name) {
  const InstanceFile file = load(input);
  const CoverFamily family = family_name == "basic" ? CoverFamily::basic
                             : family_name == "cech" ? CoverFamily::cech
                                                     : CoverFamily::all;
  if (file.category() == FinSet::name) return falsify_in<FinSet>(file, max_cover, family);
  return falsify_in<Vect>(file, max_cover, family);
}

int counterexample(const std::string& builtin, const std::string& save_path) {
  if (builtin != "figure1") throw ValidationError("unknown builtin '" + builtin + "'");
  const Figure1 fx = figure1_fixture();
  if (!save_path.empty()) save(figure1_instance(), save_path);
  const CounterexampleReport r = run_counterexample(fx);
  std::cout << "dim F̂[U1]=" << r.fine_dim << ", dim F̂[U2]=" << r.coarse_dim << ", dim F(X)=" << r.target_dim << "; "
            << (r.comparison_injective ? "injective" : "not injective") << "; "
            << (r.arrow_surjective ? "surjective" : "not surjective") << "; "
            << (r.composite_iso ? "composite iso" : "composite not iso") << "\n";
  return r.as_documented() ? success : verdict_failure;
}

int verify_theorem(const SweepOptions& options, const std::string& json_report) {
  const SweepReport report = run_sweep(options);
  write_json(json_report, report.to_json(options));
  std::cout << report.posets << " posets, " << report.diagrams << " diagrams, " << report.down_sets
            << " down-sets\n";
  std::cout << report.failures.size() << " failures / " << report.checks << " checks\n";
  for (const auto& f : report.failures) std::cout << "failure (" << f.kind << "): " << f.instance.dump() << "\n";
  return report.ok() ? success : verdict_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cosheaves on finite posets: covers, colimits, Kan extensions"};
  app.require_subcommand(1);

  std::string input, output, cover_name, builtin = "figure1", save_path, json_report, family = "all";
  std::size_t max_cover = 4;

  auto* cc = app.add_subcommand("check-cover", "Cover, Čech, basic and complete verdicts for a named cover");
  cc->add_option("--input", input)->required();
  cc->add_option("--cover", cover_name)->required();

  auto* kn = app.add_subcommand("kan", "Write F̂ = Lan_ι F over the down-set lattice");
  kn->add_option("--input", input)->required();
  kn->add_option("--output", output)->required();

  auto* cs = app.add_subcommand("check-cosheaf", "Universal arrow F[U] -> F(U) for a named cover");
  cs->add_option("--input", input)->required();
  cs->add_option("--cover", cover_name)->required();

  SweepOptions sweep;
  auto* vt = app.add_subcommand("verify-theorem", "Exhaustive check that F̂ is a basic cosheaf");
  vt->add_option("--max-elements", sweep.max_elements);
  vt->add_option("--max-dim", sweep.max_value, "largest dimension (vect) or cardinality (finset)");
  vt->add_option("--max-cover", sweep.max_cover);
  vt->add_option("--trials", sweep.trials);
  vt->add_option("--seed", sweep.seed);
  vt->add_option("--category", sweep.category)->check(CLI::IsMember({"vect", "finset"}));
  vt->add_option("--threads", sweep.threads);
  vt->add_option("--proof-steps-up-to", sweep.proof_steps_max_elements,
                 "also check every proof step on posets up to this size");
  vt->add_option("--json-report", json_report);

  auto* ce = app.add_subcommand("counterexample", "Reproduce the interval refinement counterexample");
  ce->add_option("--builtin", builtin);
  ce->add_option("--save", save_path, "write the fixture instance to this path");

  auto* fr = app.add_subcommand("falsify-refinement", "Search for a cosheaf-for-fine, not-for-coarse pair");
  fr->add_option("--input", input)->required();
  fr->add_option("--max-cover", max_cover);
  fr->add_option("--family", family)->check(CLI::IsMember({"all", "basic", "cech"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cc) return check_cover(input, cover_name);
    if (*kn) return kan(input, output);
    if (*cs) return check_cosheaf(input, cover_name);
    if (*vt) return verify_theorem(sweep, json_report);
    if (*ce) return counterexample(builtin, save_path);
    if (*fr) return falsify(input, max_cover, family);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return validation_error;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return validation_error;
  } catch (const SizeError& e) {
    std::cerr << "size bound: " << e.what() << "\n";
    return size_bound;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return validation_error;
  }
  return success;
}
