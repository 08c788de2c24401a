#include "alex/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "alex/cosheaf.hpp"
#include "alex/instance.hpp"
#include "alex/random.hpp"

namespace alex {

namespace {

struct WorkItem {
  std::size_t size;
  std::size_t index;
  FinitePoset poset;
};

// Covers of every down-set, computed once per poset.
struct CoverCensus {
  DownSetLattice lattice;
  std::vector<std::vector<Cover>> all;
  std::vector<std::vector<Cover>> basic;
};

CoverCensus census(const FinitePoset& poset, std::size_t max_cover) {
  CoverCensus c{down_set_lattice(poset), {}, {}};
  for (const DownSet& target : c.lattice.sets) {
    c.all.push_back(enumerate_covers(c.lattice, target, max_cover));
    std::vector<Cover> basic;
    for (const Cover& cover : c.all.back())
      if (is_basic_cover(cover)) basic.push_back(cover);
    c.basic.push_back(std::move(basic));
  }
  return c;
}

template <ValueCategory C>
nlohmann::json replay(const Diagram<C>& diagram, const std::vector<std::pair<std::string, Cover>>& covers,
                      const std::string& note) {
  InstanceFile file;
  file.poset = diagram.base();
  file.diagram = diagram;
  for (const auto& [name, cover] : covers) file.covers.emplace(name, cover);
  file.metadata["failure"] = note;
  return to_json(file);
}

template <ValueCategory C>
void run_item(const WorkItem& item, const SweepOptions& options, SweepReport& report) {
  const CoverCensus covers = census(item.poset, options.max_cover);
  report.posets += 1;
  report.down_sets += covers.lattice.sets.size();
  for (std::size_t s = 0; s < covers.all.size(); ++s) {
    report.covers += covers.all[s].size();
    report.basic_covers += covers.basic[s].size();
    if (!options.check_cech) continue;
    for (const Cover& cover : covers.all[s]) {
      if (!is_cech_cover(cover)) continue;
      ++report.cech_covers;
      if (!is_basic_cover(cover)) {
        ++report.cech_not_basic;
        InstanceFile file;
        file.poset = item.poset;
        file.covers.emplace("cech", cover);
        file.metadata["failure"] = "Čech cover that is not basic";
        report.failures.push_back({"cech-not-basic", to_json(file)});
      }
    }
  }

  RandomDiagramOptions random;
  random.max_value = options.max_value;
  const std::uint64_t category_tag = std::is_same_v<C, Vect> ? 0 : 1;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    Rng rng = make_rng(options.seed, {category_tag, item.size, item.index, trial});
    const Diagram<C> diagram = random_diagram<C>(item.poset, rng, random);
    ++report.diagrams;

    const KanExtension<C> ext = hat(diagram, covers.lattice);
    const Precosheaf<C> pre = Precosheaf<C>::from_hat(ext, covers.lattice);
    for (const auto& family : covers.basic)
      for (const Cover& cover : family) {
        ++report.checks;
        if (!cosheaf_arrow(pre, cover).verdict)
          report.failures.push_back({"cosheaf", replay(diagram, {{"failing", cover}}, "universal arrow is not an isomorphism")});
      }

    if (options.check_restriction) {
      ++report.restriction_checks;
      if (!check_restriction(ext))
        report.failures.push_back({"restriction", replay<C>(diagram, {}, "F(p) -> F̂(D_p) is not a natural isomorphism")});
    }

    if (options.run_falsifier) {
      ++report.falsifier_runs;
      if (auto w = falsify_refinement(pre, options.max_cover, CoverFamily::basic))
        report.failures.push_back({"falsifier", replay(diagram, {{"fine", w->fine}, {"coarse", w->coarse}},
                                                       "refinement witness among basic covers of F̂")});
    }

    if (item.size <= options.proof_steps_max_elements) {
      for (const auto& family : covers.basic)
        for (const Cover& cover : family) {
          ++report.proof_step_checks;
          if (!check_proof_steps(diagram, cover).ok())
            report.failures.push_back({"proof-steps", replay(diagram, {{"failing", cover}}, "proof step check failed")});
        }
    }
  }
}

void merge(SweepReport& into, SweepReport&& part) {
  into.posets += part.posets;
  into.diagrams += part.diagrams;
  into.down_sets += part.down_sets;
  into.checks += part.checks;
  into.covers += part.covers;
  into.basic_covers += part.basic_covers;
  into.cech_covers += part.cech_covers;
  into.cech_not_basic += part.cech_not_basic;
  into.restriction_checks += part.restriction_checks;
  into.proof_step_checks += part.proof_step_checks;
  into.falsifier_runs += part.falsifier_runs;
  for (auto& f : part.failures) into.failures.push_back(std::move(f));
}

}  // namespace

SweepReport run_sweep(const SweepOptions& options) {
  if (options.category != Vect::name && options.category != FinSet::name)
    throw Error("unknown category '" + options.category + "'");

  std::vector<WorkItem> items;
  for (std::size_t n = 0; n <= options.max_elements; ++n) {
    auto posets = enumerate_labeled_posets(n);
    for (std::size_t i = 0; i < posets.size(); ++i) items.push_back({n, i, std::move(posets[i])});
  }

  // Each item writes only its own slot; merging in item order keeps the
  // report independent of scheduling.
  std::vector<SweepReport> parts(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        if (options.category == Vect::name) run_item<Vect>(items[i], options, parts[i]);
        else run_item<FinSet>(items[i], options, parts[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(items.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SweepReport report;
  for (auto& part : parts) merge(report, std::move(part));
  return report;
}

nlohmann::json SweepReport::to_json(const SweepOptions& options) const {
  nlohmann::json failures_json = nlohmann::json::array();
  for (const auto& f : failures) failures_json.push_back({{"kind", f.kind}, {"instance", f.instance}});
  return {
      {"options",
       {{"max_elements", options.max_elements},
        {"max_value", options.max_value},
        {"max_cover", options.max_cover},
        {"trials", options.trials},
        {"seed", options.seed},
        {"category", options.category},
        {"proof_steps_max_elements", options.proof_steps_max_elements}}},
      {"counts",
       {{"posets", posets},
        {"diagrams", diagrams},
        {"down_sets", down_sets},
        {"checks", checks},
        {"covers", covers},
        {"basic_covers", basic_covers},
        {"cech_covers", cech_covers},
        {"cech_not_basic", cech_not_basic},
        {"restriction_checks", restriction_checks},
        {"proof_step_checks", proof_step_checks},
        {"falsifier_runs", falsifier_runs}}},
      {"failures", failures_json},
      {"verdict", ok() ? "pass" : "fail"},
  };
}

}  // namespace alex
