// domkit: command-line workbench for finite finitary bases.
//
// Exit codes: 0 success / predicate holds; 1 predicate fails (JSON report
// on stdout); 2 input or usage error; 3 cardinality/search cap exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "domkit/domkit.hpp"

namespace {

using domkit::json;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw domkit::input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw domkit::input_error("cannot write file: " + out_path);
  out << text;
}

domkit::FiniteBasis load_basis(const std::string& path) {
  return domkit::parse_basis(read_file(path));
}

int emit_report(const domkit::SubsetReport& r) {
  std::cout << domkit::report_to_json(r).dump(2) << "\n";
  return r.holds ? kExitHolds : kExitFails;
}

json am_to_json(const domkit::ApproxMapping& am) {
  json j;
  j["term"] = am.term().str();
  json pairs = json::array();
  for (const auto& [s, t] : am.pairs) {
    pairs.push_back(json::array({s.str(), t.str()}));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

std::vector<std::pair<domkit::Element, domkit::Element>> pairs_of_term(
    const std::string& text) {
  domkit::Element e = domkit::parse_element(text);
  if (e.kind() != domkit::TermKind::Am) {
    throw domkit::input_error("expected an am{...} term, got " + e.str());
  }
  std::vector<std::pair<domkit::Element, domkit::Element>> pairs;
  for (std::size_t i = 0; i < e.graph_size(); ++i) {
    pairs.emplace_back(e.graph_source(i), e.graph_target(i));
  }
  return pairs;
}

// props predicates over a whole basis or a --subset of it.
int run_props(const std::string& file, const std::string& predicate,
              const std::vector<std::string>& subset_terms) {
  domkit::FiniteBasis b = load_basis(file);
  std::vector<domkit::Element> subset;
  subset.reserve(subset_terms.size());
  for (const std::string& t : subset_terms) {
    subset.push_back(domkit::parse_element(t));
  }
  auto need_subset = [&]() {
    if (subset.empty()) {
      throw domkit::input_error("predicate '" + predicate +
                                "' requires --subset");
    }
  };
  if (predicate == "finitary-basis") {
    return emit_report(domkit::is_finitary_basis(b));
  }
  if (predicate == "cpo") return emit_report(domkit::check_cpo(b));
  if (predicate == "domain") return emit_report(domkit::check_domain(b));
  if (predicate == "bounded") {
    need_subset();
    return emit_report(domkit::is_bounded(b, subset));
  }
  if (predicate == "consistent") {
    need_subset();
    return emit_report(domkit::is_consistent(b, subset));
  }
  if (predicate == "directed") {
    need_subset();
    return emit_report(domkit::is_directed(b, subset));
  }
  if (predicate == "downward-closed") {
    need_subset();
    return emit_report(domkit::is_downward_closed(b, subset));
  }
  if (predicate == "chain") {
    need_subset();
    return emit_report(domkit::is_chain(b, subset));
  }
  if (predicate == "anti-chain") {
    need_subset();
    return emit_report(domkit::is_antichain(b, subset));
  }
  if (predicate == "ideal") {
    need_subset();
    return emit_report(domkit::is_ideal(b, subset));
  }
  if (predicate == "weak-ideal") {
    need_subset();
    return emit_report(domkit::is_weak_ideal(b, subset));
  }
  throw domkit::input_error("unknown predicate '" + predicate + "'");
}

int run_coop(const std::string& base_file,
             const std::vector<std::string>& labels, std::size_t max_seq_len,
             std::size_t iters, std::size_t max_card,
             const std::string& stage_dir) {
  domkit::CoopParams params{domkit::lift_antichain({"placeholder"}),
                            labels, max_seq_len, iters, max_card};
  params.base = load_basis(base_file);
  domkit::CoopTrace trace = domkit::coop_construct(params);

  json j;
  json sizes = json::array();
  for (const auto& s : trace.stages) sizes.push_back(s.size());
  j["stage_sizes"] = std::move(sizes);
  json msizes = json::array();
  for (const auto& s : trace.method_stages) msizes.push_back(s.size());
  j["method_sizes"] = std::move(msizes);
  json rsizes = json::array();
  for (const auto& s : trace.record_stages) rsizes.push_back(s.size());
  j["record_sizes"] = std::move(rsizes);
  j["stop_reason"] = domkit::stop_reason_name(trace.stop_reason);
  j["truncation_note"] = trace.truncation_note;
  if (trace.stop_reason == domkit::StopReason::CardCap) {
    j["cap_detail"] = trace.cap_detail;
  }
  json embeddings = json::array();
  for (const auto& r : trace.embeddings) {
    embeddings.push_back(domkit::report_to_json(r));
  }
  j["embeddings"] = std::move(embeddings);
  j["ascending"] = domkit::report_to_json(domkit::verify_ascending(trace));
  j["union_size"] = trace.union_basis.size();

  if (!stage_dir.empty()) {
    std::filesystem::create_directories(stage_dir);
    auto emit_stage = [&](const std::string& prefix, std::size_t idx,
                          const domkit::FiniteBasis& basis) {
      std::ofstream out(stage_dir + "/" + prefix + std::to_string(idx) +
                        ".json");
      out << domkit::serialize_basis(basis);
    };
    for (std::size_t i = 0; i < trace.stages.size(); ++i) {
      emit_stage("O_", i, trace.stages[i]);
    }
    for (std::size_t i = 0; i < trace.method_stages.size(); ++i) {
      emit_stage("M_", i + 1, trace.method_stages[i]);
    }
    for (std::size_t i = 0; i < trace.record_stages.size(); ++i) {
      emit_stage("R_", i + 1, trace.record_stages[i]);
    }
  }

  std::cout << j.dump(2) << "\n";
  return trace.stop_reason == domkit::StopReason::CardCap ? kExitCap
                                                          : kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"domkit: finite finitary bases, ideal completion, "
               "approximable mappings, domain constructors, and the "
               "object-domain equation"};
  app.set_version_flag("--version", "domkit 0.1.0");
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  std::string file_a, file_b, out_path, predicate, am_term, stage_dir;
  std::vector<std::string> subset_terms, labels;
  std::size_t max_len = 1, max_seq_len = 1, iters = 4, max_card = 4096;
  std::size_t am_cap = 20;
  bool strict_flag = false, full_order = false;

  CLI::App* cmd_check = app.add_subcommand(
      "check", "validate a basis file (axioms, bottom, finitary closure)");
  cmd_check->add_option("file", file_a, "basis file")->required();

  CLI::App* cmd_props = app.add_subcommand(
      "props", "evaluate an order predicate on a basis or subset");
  cmd_props->add_option("file", file_a)->required();
  cmd_props->add_option("--predicate", predicate, "predicate name")
      ->required();
  cmd_props->add_option("--subset", subset_terms,
                        "subset element terms (repeatable)");

  CLI::App* cmd_complete =
      app.add_subcommand("complete", "ideal completion of a basis");
  cmd_complete->add_option("file", file_a)->required();
  cmd_complete->add_option("-o,--out", out_path, "output path");

  CLI::App* cmd_iso =
      app.add_subcommand("iso", "order-isomorphism between two bases");
  cmd_iso->add_option("a", file_a)->required();
  cmd_iso->add_option("b", file_b)->required();

  CLI::App* cmd_subdomain =
      app.add_subcommand("subdomain", "check the four subdomain clauses");
  cmd_subdomain->add_option("d", file_a)->required();
  cmd_subdomain->add_option("e", file_b)->required();

  CLI::App* cmd_am = app.add_subcommand("am", "approximable mappings");
  cmd_am->require_subcommand(1);
  CLI::App* am_check =
      cmd_am->add_subcommand("check", "check the four mapping conditions");
  am_check->add_option("source", file_a)->required();
  am_check->add_option("target", file_b)->required();
  am_check->add_option("pairs", am_term, "pair set as an am{...} term")
      ->required();
  CLI::App* am_enumerate =
      cmd_am->add_subcommand("enumerate", "enumerate all mappings");
  am_enumerate->add_option("source", file_a)->required();
  am_enumerate->add_option("target", file_b)->required();
  am_enumerate->add_option("--cap", am_cap, "carrier-product cap");
  CLI::App* am_close = cmd_am->add_subcommand(
      "close", "smallest mapping containing a seed pair set");
  am_close->add_option("source", file_a)->required();
  am_close->add_option("target", file_b)->required();
  am_close->add_option("seed", am_term, "seed pairs as an am{...} term")
      ->required();

  CLI::App* cmd_sum = app.add_subcommand("sum", "coalesced sum");
  cmd_sum->add_option("a", file_a)->required();
  cmd_sum->add_option("b", file_b)->required();
  cmd_sum->add_option("-o,--out", out_path);
  cmd_sum->add_option("--max-card", max_card);

  CLI::App* cmd_prod = app.add_subcommand("prod", "strict product");
  cmd_prod->add_option("a", file_a)->required();
  cmd_prod->add_option("b", file_b)->required();
  cmd_prod->add_option("-o,--out", out_path);
  cmd_prod->add_option("--max-card", max_card);

  CLI::App* cmd_fun =
      app.add_subcommand("fun", "strict continuous function space");
  cmd_fun->add_option("a", file_a)->required();
  cmd_fun->add_option("b", file_b)->required();
  cmd_fun->add_flag("--strict", strict_flag,
                    "strict function space (the only supported flavor)")
      ->required();
  cmd_fun->add_option("-o,--out", out_path);
  cmd_fun->add_option("--max-card", max_card);

  CLI::App* cmd_star = app.add_subcommand("star", "bounded strict sequences");
  cmd_star->add_option("d", file_a)->required();
  cmd_star->add_option("--max-len", max_len, "maximum sequence length")
      ->required();
  cmd_star->add_option("-o,--out", out_path);
  cmd_star->add_option("--max-card", max_card);

  CLI::App* cmd_rec = app.add_subcommand("rec", "record space over labels");
  cmd_rec->add_option("m", file_a)->required();
  cmd_rec->add_option("--labels", labels, "record labels")
      ->required()
      ->delimiter(',');
  cmd_rec->add_option("-o,--out", out_path);
  cmd_rec->add_option("--max-card", max_card);

  CLI::App* cmd_coop =
      app.add_subcommand("coop", "solve the object-domain equation");
  cmd_coop->add_option("--base", file_a, "base-object basis file")
      ->required();
  cmd_coop->add_option("--labels", labels, "method labels")
      ->required()
      ->delimiter(',');
  cmd_coop->add_option("--max-seq-len", max_seq_len);
  cmd_coop->add_option("--iters", iters);
  cmd_coop->add_option("--max-card", max_card);
  cmd_coop->add_option("--emit-stages", stage_dir,
                       "directory for per-stage basis files");

  CLI::App* cmd_export = app.add_subcommand("export", "DOT diagram");
  cmd_export->add_option("file", file_a)->required();
  cmd_export->add_flag("--full-order", full_order,
                       "emit every strict pair, not just covers");
  cmd_export->add_option("-o,--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    domkit::ConstructorParams cp{max_len, max_card};

    if (*cmd_check) {
      domkit::FiniteBasis b = load_basis(file_a);
      domkit::SubsetReport fin = domkit::is_finitary_basis(b);
      json j = domkit::report_to_json(fin);
      j["name"] = b.name();
      j["size"] = b.size();
      std::cout << j.dump(2) << "\n";
      return fin.holds ? kExitHolds : kExitFails;
    }
    if (*cmd_props) return run_props(file_a, predicate, subset_terms);
    if (*cmd_complete) {
      domkit::FiniteBasis b = load_basis(file_a);
      domkit::SubsetReport fin = domkit::is_finitary_basis(b);
      if (!fin.holds) return emit_report(fin);
      domkit::CompletedDomain c = domkit::ideal_completion(b);
      write_output(out_path, domkit::serialize_basis(c.as_basis()));
      return kExitHolds;
    }
    if (*cmd_iso) {
      domkit::FiniteBasis a = load_basis(file_a);
      domkit::FiniteBasis b = load_basis(file_b);
      auto witness = domkit::check_isomorphic(a, b);
      json j;
      j["isomorphic"] = witness.has_value();
      if (witness) {
        json mapping = json::array();
        for (const auto& [x, y] : witness->mapping) {
          mapping.push_back(json::array({x.str(), y.str()}));
        }
        j["mapping"] = std::move(mapping);
      }
      std::cout << j.dump(2) << "\n";
      return witness ? kExitHolds : kExitFails;
    }
    if (*cmd_subdomain) {
      return emit_report(
          domkit::check_subdomain(load_basis(file_a), load_basis(file_b)));
    }
    if (*am_check) {
      domkit::FiniteBasis src = load_basis(file_a);
      domkit::FiniteBasis tgt = load_basis(file_b);
      domkit::AmConditions c =
          domkit::check_am(src, tgt, pairs_of_term(am_term));
      json j;
      j["holds"] = c.holds();
      json conditions = json::array();
      for (const domkit::SubsetReport* r :
           {&c.pointed, &c.downward_closed, &c.lub_closed, &c.monotone}) {
        conditions.push_back(domkit::report_to_json(*r));
      }
      j["conditions"] = std::move(conditions);
      std::cout << j.dump(2) << "\n";
      return c.holds() ? kExitHolds : kExitFails;
    }
    if (*am_enumerate) {
      domkit::FiniteBasis src = load_basis(file_a);
      domkit::FiniteBasis tgt = load_basis(file_b);
      std::vector<domkit::ApproxMapping> ams =
          domkit::enumerate_ams(src, tgt, am_cap);
      json j;
      j["count"] = ams.size();
      json mappings = json::array();
      for (const auto& am : ams) mappings.push_back(am_to_json(am));
      j["mappings"] = std::move(mappings);
      std::cout << j.dump(2) << "\n";
      return kExitHolds;
    }
    if (*am_close) {
      domkit::FiniteBasis src = load_basis(file_a);
      domkit::FiniteBasis tgt = load_basis(file_b);
      domkit::ApproxMapping am =
          domkit::smallest_am_containing(src, tgt, pairs_of_term(am_term));
      std::cout << am_to_json(am).dump(2) << "\n";
      return kExitHolds;
    }
    if (*cmd_sum) {
      write_output(out_path,
                   domkit::serialize_basis(domkit::coalesced_sum(
                       load_basis(file_a), load_basis(file_b), cp)));
      return kExitHolds;
    }
    if (*cmd_prod) {
      write_output(out_path,
                   domkit::serialize_basis(domkit::strict_product(
                       load_basis(file_a), load_basis(file_b), cp)));
      return kExitHolds;
    }
    if (*cmd_fun) {
      write_output(out_path, domkit::serialize_basis(domkit::strict_fun(
                                 load_basis(file_a), load_basis(file_b), cp)));
      return kExitHolds;
    }
    if (*cmd_star) {
      write_output(out_path,
                   domkit::serialize_basis(
                       domkit::kleene_star(load_basis(file_a), max_len, cp)));
      return kExitHolds;
    }
    if (*cmd_rec) {
      write_output(out_path, domkit::serialize_basis(domkit::record_basis(
                                 labels, load_basis(file_a), cp)));
      return kExitHolds;
    }
    if (*cmd_coop) {
      return run_coop(file_a, labels, max_seq_len, iters, max_card,
                      stage_dir);
    }
    if (*cmd_export) {
      write_output(out_path, domkit::export_dot(load_basis(file_a),
                                                full_order));
      return kExitHolds;
    }
    std::cerr << "no command selected\n";
    return kExitInput;
  } catch (const domkit::validation_error& e) {
    std::cout << domkit::report_to_json(e.report()).dump(2) << "\n";
    std::cerr << "validation failed: " << e.what() << "\n";
    return kExitFails;
  } catch (const domkit::closure_error& e) {
    std::cout << domkit::report_to_json(e.report()).dump(2) << "\n";
    std::cerr << "closure failed: " << e.what() << "\n";
    return kExitFails;
  } catch (const domkit::cap_error& e) {
    json j;
    j["error"] = "cap";
    j["step"] = e.step();
    j["detail"] = e.what();
    std::cout << j.dump(2) << "\n";
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const domkit::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
