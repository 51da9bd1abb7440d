#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "domkit/basis.hpp"
#include "domkit/completion.hpp"
#include "domkit/constructors.hpp"
#include "domkit/element.hpp"

namespace domkit {

// Parameters of the object-domain equation O = B + L -o (O* -o-> O).
struct CoopParams {
  FiniteBasis base;
  std::vector<Element::Label> labels;
  std::size_t max_seq_len = 1;
  std::size_t max_iters = 4;
  std::size_t cardinality_cap = 4096;
};

enum class StopReason { Converged, IterCap, CardCap };

inline const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::Converged: return "converged";
    case StopReason::IterCap: return "iter_cap";
    case StopReason::CardCap: return "card_cap";
  }
  return "unknown";
}

struct CoopStep {
  FiniteBasis methods;  // M_{i+1} = O_i* -o-> O_i
  FiniteBasis records;  // R_{i+1} = L -o M_{i+1}
  FiniteBasis next;     // O_{i+1} = B + R_{i+1}
};

// Ascending-stage trace. Carriers nest literally (each O_i term reappears
// in O_{i+1}), so the union-so-far is just the last computed stage.
struct CoopTrace {
  std::vector<FiniteBasis> stages;         // O_0 .. O_k
  std::vector<FiniteBasis> method_stages;  // M_1 .. M_k
  std::vector<FiniteBasis> record_stages;  // R_1 .. R_k
  StopReason stop_reason = StopReason::IterCap;
  std::vector<SubsetReport> embeddings;    // O_i into O_{i+1}
  FiniteBasis union_basis;
  std::string truncation_note;
  std::string cap_detail;  // set when stop_reason is CardCap
};

inline void validate_coop_params(const CoopParams& params) {
  if (params.labels.empty()) {
    throw input_error("coop requires a non-empty label set");
  }
  SubsetReport fin = is_finitary_basis(params.base);
  if (!fin.holds) {
    throw input_error("coop base is not a finitary basis: " + fin.detail);
  }
}

inline CoopStep coop_step(const FiniteBasis& o_i, const CoopParams& params) {
  ConstructorParams cp{params.max_seq_len, params.cardinality_cap};
  FiniteBasis star = kleene_star(o_i, params.max_seq_len, cp);
  FiniteBasis m = strict_fun(star, o_i, cp);
  FiniteBasis r = record_basis(params.labels, m, cp);
  FiniteBasis o = coalesced_sum(params.base, r, cp);
  return CoopStep{std::move(m), std::move(r), std::move(o)};
}

// Bounded lfp iteration from the one-point stage. Stops on stage equality
// (canonical terms and order, not just cardinality), on the iteration cap,
// or on a cardinality cap, in which case the completed prefix is kept and
// the cap detail names the constructor step that blew up.
inline CoopTrace coop_construct(const CoopParams& params) {
  validate_coop_params(params);
  CoopTrace trace;
  trace.stages.push_back(one_point_basis("O_0"));
  trace.stop_reason = StopReason::IterCap;
  for (std::size_t i = 0; i < params.max_iters; ++i) {
    CoopStep step;
    try {
      step = coop_step(trace.stages.back(), params);
    } catch (const cap_error& e) {
      trace.stop_reason = StopReason::CardCap;
      trace.cap_detail = e.what();
      break;
    }
    const FiniteBasis& prev = trace.stages.back();
    trace.embeddings.push_back(check_subdomain(prev, step.next));
    bool fixed = prev.same_structure(step.next);
    trace.method_stages.push_back(std::move(step.methods));
    trace.record_stages.push_back(std::move(step.records));
    trace.stages.push_back(std::move(step.next));
    if (fixed) {
      trace.stop_reason = StopReason::Converged;
      break;
    }
  }
  trace.union_basis = trace.stages.back();
  trace.truncation_note =
      "depth-" + std::to_string(trace.stages.size() - 1) +
      " approximation of the object domain under max_seq_len=" +
      std::to_string(params.max_seq_len) + ", max_iters=" +
      std::to_string(params.max_iters) + ", cardinality_cap=" +
      std::to_string(params.cardinality_cap) +
      "; the reported union of stages is not claimed to be the full "
      "solution";
  return trace;
}

// Re-checks the ascending-chain structure of a trace independently of the
// reports recorded while it was built: literal carrier nesting first (the
// union is meaningless without it), then all four subdomain clauses.
inline SubsetReport verify_ascending(const CoopTrace& trace) {
  if (trace.stages.empty()) {
    return SubsetReport::fail("ascending-chain", "trace has no stages");
  }
  for (std::size_t i = 0; i + 1 < trace.stages.size(); ++i) {
    const FiniteBasis& lo = trace.stages[i];
    const FiniteBasis& hi = trace.stages[i + 1];
    for (const Element& e : lo.elements()) {
      if (!hi.contains(e)) {
        return SubsetReport::fail(
            "ascending-chain",
            "stage " + std::to_string(i) + " element " + e.str() +
                " is missing from stage " + std::to_string(i + 1),
            {e});
      }
    }
    SubsetReport sub = check_subdomain(lo, hi);
    if (!sub.holds) {
      return SubsetReport::fail(
          "ascending-chain",
          "stage " + std::to_string(i) + " is not a subdomain of stage " +
              std::to_string(i + 1) + ": " + sub.detail,
          sub.witness);
    }
  }
  return SubsetReport::pass("ascending-chain");
}

}  // namespace domkit
