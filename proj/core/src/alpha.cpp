#include "gseq/alpha.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "gseq/error.hpp"
#include "gseq/validator.hpp"

namespace gseq {

namespace {

std::uint64_t nat(const Ordinal& o, const char* what) {
  if (!o.is_finite()) throw Error(ErrorCode::Unsupported, std::string(what) + ": infinite element " + o.to_string());
  return o.finite_value();
}

void require_omega(const AlphaMachineSpec& spec) {
  if (!(spec.alpha == Ordinal::omega())) {
    throw Error(ErrorCode::Unsupported, "alpha-machines run only at alpha = w, got " + spec.alpha.to_string());
  }
}

// Bounded history of one value, fed to classify_tail at the limit.
struct History {
  std::optional<std::uint64_t> start;
  std::deque<std::uint64_t> events;
  std::size_t cap = 64;

  void push(std::uint64_t v) {
    events.push_back(v);
    if (events.size() > cap) {
      start.reset();
      events.pop_front();
    }
  }
  TailVerdict verdict() const { return classify_tail(start, {events.begin(), events.end()}); }
};

}  // namespace

AlphaMachineSpec parse_alpha_program(std::string_view text) {
  AlphaMachineSpec spec;
  spec.program = parse_tm(text);
  check_tm(spec.program, true);
  return spec;
}

OrdinalSet encode_pair_of_sets(const OrdinalSet& x, const OrdinalSet& o) {
  if (!x.is_finite() || !o.is_finite()) {
    throw Error(ErrorCode::Unrepresentable, "only finite sets can be coded on the input tape");
  }
  std::vector<Ordinal> code;
  for (const auto& a : x.support()) code.push_back(godel_pair(Ordinal::finite(0), a));
  for (const auto& b : o.support()) code.push_back(godel_pair(Ordinal::finite(1), b));
  return OrdinalSet::of(std::move(code));
}

std::pair<OrdinalSet, OrdinalSet> decode_pair_of_sets(const OrdinalSet& code) {
  if (!code.is_finite()) throw Error(ErrorCode::Unrepresentable, "cannot decode a cofinite code");
  std::vector<Ordinal> x;
  std::vector<Ordinal> o;
  for (const auto& c : code.support()) {
    auto [tag, v] = godel_unpair(nat(c, "code"));
    if (tag == 0) x.push_back(Ordinal::finite(v));
    else if (tag == 1) o.push_back(Ordinal::finite(v));
    else throw Error(ErrorCode::OutOfDomain, "code element " + c.to_string() + " is not a pair (0, x) or (1, o)");
  }
  return {OrdinalSet::of(std::move(x)), OrdinalSet::of(std::move(o))};
}

std::string_view to_string(AlphaResult::Kind k) {
  switch (k) {
    case AlphaResult::Kind::Halted: return "Halted";
    case AlphaResult::Kind::NotHalted: return "NotHalted";
    case AlphaResult::Kind::Crashed: return "Crashed";
  }
  return "?";
}

AlphaResult run_alpha_machine(const AlphaMachineSpec& spec, const OrdinalSet& input, const AlphaBudget& budget) {
  require_omega(spec);
  const TmSpec& p = spec.program;
  check_tm(p, true);
  if (!input.is_finite()) throw Error(ErrorCode::Unrepresentable, "alpha-machine input must be finite");

  std::set<std::uint64_t> tape;
  for (const auto& a : input.support()) tape.insert(nat(a, "input"));
  const std::set<std::uint64_t> oracle = tape;
  std::uint64_t head = 0;
  std::size_t state = 0;
  std::uint64_t clock = 0;

  History head_hist{{0}, {}, budget.window};
  History state_hist{{0}, {}, budget.window};
  std::map<std::uint64_t, History> cells;

  auto as_set = [](const std::set<std::uint64_t>& s) {
    return OrdinalSet::of_naturals(std::vector<std::uint64_t>(s.begin(), s.end()));
  };
  auto snapshot = [&](const Ordinal& at) {
    return AlphaConfig{Ordinal::finite(head), state, as_set(tape), input, at};
  };

  AlphaResult r;
  while (state != p.final_state()) {
    if (clock >= budget.max_steps) {
      r.kind = AlphaResult::Kind::NotHalted;
      r.steps = clock;
      r.config = snapshot(Ordinal::finite(clock));
      r.reason = "no halt within " + std::to_string(budget.max_steps) + " steps";
      if (!budget.follow_limit) return r;

      TailVerdict hv = head_hist.verdict();
      TailVerdict sv = state_hist.verdict();
      if (hv.tail == TailClass::Unbounded) {
        r.kind = AlphaResult::Kind::Crashed;
        r.reason = "head position has no limit inferior below alpha";
        return r;
      }
      if (hv.tail == TailClass::Unknown || sv.tail == TailClass::Unknown) {
        r.reason += "; limit not determined from the recorded history";
        return r;
      }
      std::set<std::uint64_t> lim = tape;
      for (const auto& [cell, h] : cells) {
        TailVerdict cv = h.verdict();
        if (cv.tail == TailClass::Unknown) {
          r.reason += "; limit not determined for cell " + std::to_string(cell);
          return r;
        }
        if (cv.value) lim.insert(cell);
        else lim.erase(cell);
      }
      r.limit = AlphaConfig{Ordinal::finite(hv.value), static_cast<std::size_t>(sv.value), as_set(lim), input,
                            Ordinal::omega()};
      r.reason += "; the clock reaches alpha";
      return r;
    }

    if (auto b = p.branches.find(state); b != p.branches.end()) {
      bool yes = b->second.kind == TmBranch::Kind::Oracle ? oracle.count(head) > 0
                                                          : head == p.params.at(b->second.param);
      state = yes ? b->second.yes : b->second.no;
    } else {
      int bit = tape.count(head) ? 1 : 0;
      auto it = p.delta.find({state, bit});
      if (it == p.delta.end()) throw Error(ErrorCode::Validation, "no transition for a non-final state");
      const TmAction& a = it->second;
      if (a.write != bit) {
        if (a.write) tape.insert(head);
        else tape.erase(head);
        auto [c, fresh] = cells.try_emplace(head, History{std::optional<std::uint64_t>(bit), {}, budget.window});
        c->second.push(static_cast<std::uint64_t>(a.write));
      }
      state = a.next;
      std::uint64_t moved = a.move == Move::Left ? (head == 0 ? 0 : head - 1) : head + 1;
      if (moved != head) head_hist.push(moved);
      head = moved;
    }
    state_hist.push(state);
    ++clock;
  }
  r.kind = AlphaResult::Kind::Halted;
  r.steps = clock;
  r.output = as_set(tape);
  r.config = snapshot(Ordinal::finite(clock));
  return r;
}

MachineSpec simulate_alpha_as_gseqap(const AlphaMachineSpec& spec) {
  require_omega(spec);
  MachineSpec m = compile_program(spec.program, spec.alpha);
  m.flavor = Flavor::GSeqAP;
  return m;
}

std::vector<CrossRow> crosscheck(const AlphaMachineSpec& spec, const std::vector<OrdinalSet>& inputs,
                                 const AlphaBudget& budget, const std::optional<MachineSpec>& simulation) {
  ValidatedMachine vm = check_machine(simulation ? *simulation : simulate_alpha_as_gseqap(spec));
  Budget b;
  b.max_steps_per_segment = budget.max_steps + 4;
  b.max_limit_jumps = 1;
  std::vector<CrossRow> rows;
  for (const auto& in : inputs) {
    CrossRow row;
    row.input = in;
    row.alpha = run_alpha_machine(spec, in, budget);
    RunTrace tr = run(vm, in, b, RunMode::Short);
    row.gseq = tr.outcome.kind;
    row.gseq_short = tr.is_short(vm.spec.kappa);
    if (row.gseq_short) {
      row.gseq_output = tr.outcome.output;
      row.gseq_length = tr.outcome.length;
      // A simulation that halts just past the alpha budget is compared
      // against a longer alpha run instead of being called a mismatch.
      if (row.alpha.kind == AlphaResult::Kind::NotHalted && tr.outcome.length.is_finite()) {
        AlphaBudget longer = budget;
        longer.max_steps = std::max(budget.max_steps, tr.outcome.length.finite_value());
        longer.follow_limit = false;
        row.alpha = run_alpha_machine(spec, in, longer);
      }
    }
    bool halted = row.alpha.kind == AlphaResult::Kind::Halted;
    row.agree = halted == row.gseq_short && (!halted || row.alpha.output == row.gseq_output);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gseq
