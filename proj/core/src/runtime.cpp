#include "gseq/runtime.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <unordered_map>

#include "gseq/error.hpp"

namespace gseq {

namespace {

using Value = std::uint64_t;

Value as_value(const Ordinal& o) { return o.finite_value(); }

struct Cell {
  Value start = 0;
  Value current = 0;
  Value min_seen = 0;
  std::uint64_t events = 0;
  std::uint64_t last_event = 0;  // step offset of the latest event
  std::deque<Value> window;

  static Cell fresh(Value v) {
    Cell c;
    c.start = c.current = c.min_seen = v;
    return c;
  }
};

struct SymTrack {
  SymbolDecl decl;
  Cell scalar;                                 // constants
  std::map<Value, Cell> points;                // unary relations
  Cell tail;                                   // unary relations
  std::map<std::vector<Value>, Cell> tuples;   // n-ary relations, function arguments
};

std::string cell_name(const std::vector<Value>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(t[i]);
  }
  return out + ")";
}

std::vector<Value> values_of(const Tuple& t) {
  std::vector<Value> out;
  for (const auto& a : t) out.push_back(as_value(a));
  return out;
}

class Tracker {
 public:
  Tracker(const Signature& sigma, std::size_t window, std::ostream* sink)
      : window_(std::max<std::size_t>(window, 1)), sink_(sink) {
    for (const auto& d : sigma.decls()) {
      if (d.role != Role::Membership) syms_.push_back({d, {}, {}, {}, {}});
    }
  }

  void reset(const State& s) {
    for (auto& t : syms_) {
      const auto& d = t.decl;
      t.points.clear();
      t.tuples.clear();
      switch (d.kind) {
        case SymbolKind::Constant: t.scalar = Cell::fresh(as_value(s.constant(d.name))); break;
        case SymbolKind::Relation:
          if (d.arity == 1) {
            const auto& set = s.unary(d.name);
            for (const auto& a : set.support()) t.points[as_value(a)] = Cell::fresh(set.contains(a) ? 1 : 0);
            t.tail = Cell::fresh(set.is_cofinite() ? 1 : 0);
          } else {
            for (const auto& row : s.nary(d.name)) t.tuples[values_of(row)] = Cell::fresh(1);
          }
          break;
        case SymbolKind::Function:
          for (const auto& row : s.nary(d.name)) {
            auto v = values_of(row);
            Value value = v.back();
            v.pop_back();
            t.tuples[v] = Cell::fresh(value);
          }
          break;
      }
    }
  }

  // Records every cell that differs between a and b; b has stamp `stamp`,
  // `offset` steps after the segment start.
  void record(const State& a, const State& b, const Ordinal& stamp, std::uint64_t offset) {
    for (auto& t : syms_) {
      const auto& d = t.decl;
      switch (d.kind) {
        case SymbolKind::Constant: {
          Value v = as_value(b.constant(d.name));
          if (v != t.scalar.current) event(t.scalar, v, d.name, "-", stamp, offset);
          break;
        }
        case SymbolKind::Relation:
          if (d.arity == 1) {
            const auto& sb = b.unary(d.name);
            for (const auto& e : sb.support()) {
              Value key = as_value(e);
              if (!t.points.count(key)) t.points.emplace(key, t.tail);
            }
            for (auto& [key, cell] : t.points) {
              Value v = sb.contains(Ordinal::finite(key)) ? 1 : 0;
              if (v != cell.current) event(cell, v, d.name, std::to_string(key), stamp, offset);
            }
            Value tv = sb.is_cofinite() ? 1 : 0;
            if (tv != t.tail.current) event(t.tail, tv, d.name, "tail", stamp, offset);
          } else {
            const auto& rb = b.nary(d.name);
            for (const auto& row : rb) {
              auto key = values_of(row);
              if (!t.tuples.count(key)) t.tuples.emplace(key, Cell::fresh(0));
            }
            for (auto& [key, cell] : t.tuples) {
              Tuple row;
              for (Value x : key) row.push_back(Ordinal::finite(x));
              Value v = rb.count(row) ? 1 : 0;
              if (v != cell.current) event(cell, v, d.name, cell_name(key), stamp, offset);
            }
          }
          break;
        case SymbolKind::Function:
          for (const auto& row : b.nary(d.name)) {
            auto key = values_of(row);
            Value v = key.back();
            key.pop_back();
            auto [it, inserted] = t.tuples.emplace(key, Cell::fresh(0));
            if (v != it->second.current) event(it->second, v, d.name, cell_name(key), stamp, offset);
          }
          break;
      }
    }
    (void)a;
  }

  std::uint64_t events() const { return events_; }

  // Visits every cell with its symbol and display name.
  template <typename Fn>
  void for_each_cell(Fn&& fn) {
    for (auto& t : syms_) {
      const auto& d = t.decl;
      switch (d.kind) {
        case SymbolKind::Constant: fn(t, t.scalar, std::string("-")); break;
        case SymbolKind::Relation:
          if (d.arity == 1) {
            for (auto& [k, c] : t.points) fn(t, c, std::to_string(k));
            fn(t, t.tail, std::string("tail"));
          } else {
            for (auto& [k, c] : t.tuples) fn(t, c, cell_name(k));
          }
          break;
        case SymbolKind::Function:
          for (auto& [k, c] : t.tuples) fn(t, c, cell_name(k));
          break;
      }
    }
  }

  // State whose cells take the given values.
  template <typename ValueFn>
  State build(const Ordinal& kappa, ValueFn&& value_of) {
    State s(kappa);
    for (auto& t : syms_) {
      const auto& d = t.decl;
      switch (d.kind) {
        case SymbolKind::Constant: s.set_constant(d.name, Ordinal::finite(value_of(t.scalar))); break;
        case SymbolKind::Relation:
          if (d.arity == 1) {
            bool co = value_of(t.tail) != 0;
            std::vector<Ordinal> support;
            for (auto& [k, c] : t.points) {
              if ((value_of(c) != 0) != co) support.push_back(Ordinal::finite(k));
            }
            s.set_unary(d.name, OrdinalSet(co ? Polarity::Cofinite : Polarity::Finite, std::move(support)));
          } else {
            TupleSet rows;
            for (auto& [k, c] : t.tuples) {
              if (value_of(c) != 0) {
                Tuple row;
                for (Value x : k) row.push_back(Ordinal::finite(x));
                rows.insert(std::move(row));
              }
            }
            s.set_nary(d.name, std::move(rows));
          }
          break;
        case SymbolKind::Function: {
          TupleSet graph;
          for (auto& [k, c] : t.tuples) {
            Tuple row;
            for (Value x : k) row.push_back(Ordinal::finite(x));
            row.push_back(Ordinal::finite(value_of(c)));
            graph.insert(std::move(row));
          }
          s.set_nary(d.name, std::move(graph));
          break;
        }
      }
    }
    return s;
  }

  std::size_t window() const { return window_; }

 private:
  void event(Cell& c, Value v, const std::string& symbol, const std::string& cell, const Ordinal& stamp,
             std::uint64_t offset) {
    if (sink_) {
      *sink_ << "event stamp=" << stamp.to_string() << " symbol=" << symbol << " cell=" << cell
             << " old=" << c.current << " new=" << v << '\n';
    }
    c.current = v;
    c.min_seen = std::min(c.min_seen, v);
    ++c.events;
    c.last_event = offset;
    c.window.push_back(v);
    if (c.window.size() > window_) c.window.pop_front();
    ++events_;
  }

  std::vector<SymTrack> syms_;
  std::size_t window_;
  std::ostream* sink_;
  std::uint64_t events_ = 0;
};

void emit_snapshot(std::ostream* sink, const Ordinal& stamp, const State& s) {
  if (sink) *sink << "snapshot stamp=" << stamp.to_string() << " state=" << s.to_string() << '\n';
}

void emit_limit(std::ostream* sink, const LimitRecord& r) {
  if (!sink) return;
  *sink << "limit stamp=" << r.limit.to_string() << " verified=" << (r.verified ? "true" : "false")
        << " via=" << (r.via_cycle ? "cycle" : "classifier");
  if (r.via_cycle) *sink << " period=" << r.period;
  *sink << " cells=";
  bool first = true;
  for (const auto& c : r.cells) {
    *sink << (first ? "" : ",") << c.symbol << '[' << c.cell << "]:" << to_string(c.tail) << '(' << c.value << ')';
    first = false;
  }
  *sink << '\n';
}

void emit_warning(std::ostream* sink, const Ordinal& stamp, const std::string& msg) {
  if (sink) *sink << "warning stamp=" << stamp.to_string() << " message=" << msg << '\n';
}

}  // namespace

std::string_view to_string(TailClass c) {
  switch (c) {
    case TailClass::Stable: return "Stable";
    case TailClass::Periodic: return "Periodic";
    case TailClass::Unbounded: return "Unbounded";
    case TailClass::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::Terminated: return "Terminated";
    case Outcome::Kind::OutOfBudget: return "OutOfBudget";
    case Outcome::Kind::LimitUnresolved: return "LimitUnresolved";
    case Outcome::Kind::Failed: return "Failed";
  }
  return "?";
}

State load(const ValidatedMachine& m, const OrdinalSet& input) {
  State s = load_state(m.spec, input);
  if (auto check = models_tci(s, m.tci); !check) {
    const auto& r = check.reasons.front();
    throw Error(ErrorCode::D6Violation, "loaded state violates " + std::string(to_string(r.code)) + " " + r.detail,
                r.symbol);
  }
  return s;
}

OrdinalSet unload(const State& s, const ValidatedMachine& m) { return s.unary(m.spec.out()); }

State step(const ValidatedMachine& m, const State& s) {
  State next = successor(m.spec, s);
  if (auto check = models_tci(next, m.tci); !check) {
    const auto& r = check.reasons.front();
    throw Error(ErrorCode::D6Violation, "successor violates " + std::string(to_string(r.code)) + " " + r.detail,
                r.symbol);
  }
  return next;
}

TailVerdict classify_tail(std::optional<std::uint64_t> start, const std::vector<std::uint64_t>& events) {
  if (events.empty()) return {TailClass::Stable, start.value_or(0)};
  std::vector<std::uint64_t> seq;
  if (start) seq.push_back(*start);
  seq.insert(seq.end(), events.begin(), events.end());
  bool increasing = seq.size() >= 3;
  for (std::size_t i = 1; i < seq.size() && increasing; ++i) increasing = seq[i - 1] < seq[i];
  if (increasing) return {TailClass::Unbounded, 0};
  auto lo = *std::min_element(seq.begin(), seq.end());
  if (std::count(seq.begin(), seq.end(), lo) >= 2) return {TailClass::Periodic, lo};
  if (start && events.size() == 1) return {TailClass::Stable, events.back()};
  return {TailClass::Unknown, 0};
}

State pointwise_min(const std::vector<State>& states, const Signature& sigma) {
  if (states.empty()) throw Error(ErrorCode::Validation, "pointwise_min of no states");
  State out(states.front().kappa());
  for (const auto& d : sigma.decls()) {
    if (d.role == Role::Membership) continue;
    switch (d.kind) {
      case SymbolKind::Constant: {
        Ordinal lo = states.front().constant(d.name);
        for (const auto& s : states) lo = std::min(lo, s.constant(d.name));
        out.set_constant(d.name, lo);
        break;
      }
      case SymbolKind::Relation:
        if (d.arity == 1) {
          OrdinalSet acc = states.front().unary(d.name);
          for (const auto& s : states) acc = acc.intersect(s.unary(d.name));
          out.set_unary(d.name, acc);
        } else {
          TupleSet acc = states.front().nary(d.name);
          for (const auto& s : states) {
            TupleSet next;
            for (const auto& t : acc) {
              if (s.nary(d.name).count(t)) next.insert(t);
            }
            acc = std::move(next);
          }
          out.set_nary(d.name, acc);
        }
        break;
      case SymbolKind::Function: {
        std::map<Tuple, Ordinal> lo;
        for (const auto& s : states) {
          for (const auto& row : s.nary(d.name)) {
            Tuple args(row.begin(), row.end() - 1);
            auto [it, inserted] = lo.emplace(args, row.back());
            if (!inserted) it->second = std::min(it->second, row.back());
          }
        }
        TupleSet graph;
        for (auto& [args, v] : lo) {
          Tuple row = args;
          row.push_back(v);
          graph.insert(std::move(row));
        }
        out.set_nary(d.name, std::move(graph));
        break;
      }
    }
  }
  return out;
}

RunTrace run(const ValidatedMachine& m, const OrdinalSet& input, const Budget& budget, RunMode mode,
             const RunHooks& hooks) {
  RunTrace trace;
  trace.machine = m.spec.name;
  trace.input = input;
  std::ostream* sink = hooks.trace;
  const Ordinal& kappa = m.spec.kappa;

  auto fail = [&](const Error& e, const State& at) {
    trace.outcome.kind = Outcome::Kind::Failed;
    trace.outcome.error = e.code();
    trace.outcome.reason = e.what();
    trace.outcome.final_state = at;
  };
  auto finish = [&]() -> RunTrace& {
    if (sink) {
      *sink << "outcome kind=" << to_string(trace.outcome.kind);
      if (trace.terminated()) {
        *sink << " length=" << trace.outcome.length.to_string() << " output=" << trace.outcome.output.to_string();
      }
      if (trace.outcome.kind == Outcome::Kind::LimitUnresolved) *sink << " limit=" << trace.outcome.limit.to_string();
      if (!trace.outcome.reason.empty()) *sink << " reason=" << trace.outcome.reason;
      *sink << '\n';
    }
    return trace;
  };

  State s;
  try {
    s = load(m, input);
  } catch (const Error& e) {
    fail(e, State(kappa));
    return finish();
  }
  Ordinal clock;
  trace.snapshots.push_back({clock, s});
  emit_snapshot(sink, clock, s);

  constexpr std::size_t kHashCap = std::size_t{1} << 18;
  std::unordered_map<std::size_t, Ordinal> seen;
  bool warned = false;
  auto note_state = [&](const State& st, const Ordinal& stamp) {
    auto [it, inserted] = seen.emplace(st.hash(), stamp);
    if (!inserted && !warned) {
      warned = true;
      std::string msg = "state at " + stamp.to_string() + " repeats the state at " + it->second.to_string() +
                        "; the run is not injective";
      trace.warnings.push_back(msg);
      emit_warning(sink, stamp, msg);
    }
    if (seen.size() > kHashCap) seen.erase(seen.begin());
  };
  note_state(s, clock);

  std::uint64_t jumps = 0;
  while (true) {
    Tracker tracker(m.spec.sigma, budget.window, sink);
    tracker.reset(s);
    State tortoise = s;
    State hare = s;
    std::uint64_t power = 1;
    std::uint64_t lam = 0;
    std::uint64_t k = 0;
    bool cycle = false;
    while (true) {
      State next;
      try {
        next = step(m, hare);
      } catch (const Error& e) {
        fail(e, hare);
        trace.events += tracker.events();
        return finish();
      }
      if (hooks.on_step) hooks.on_step(clock.plus(k), hare, next);
      if (next == hare) {
        trace.events += tracker.events();
        Ordinal stamp = clock.plus(k);
        trace.outcome.kind = Outcome::Kind::Terminated;
        trace.outcome.length = stamp.successor();
        trace.outcome.output = unload(hare, m);
        trace.outcome.final_state = hare;
        if (!(trace.snapshots.back().stamp == stamp)) {
          trace.snapshots.push_back({stamp, hare});
          emit_snapshot(sink, stamp, hare);
        }
        return finish();
      }
      ++trace.steps;
      ++k;
      tracker.record(hare, next, clock.plus(k), k);
      hare = std::move(next);
      note_state(hare, clock.plus(k));
      if (budget.snapshot_every_step) {
        trace.snapshots.push_back({clock.plus(k), hare});
        emit_snapshot(sink, clock.plus(k), hare);
      }
      ++lam;
      if (hare == tortoise) {
        cycle = true;
        break;
      }
      if (lam == power) {
        tortoise = hare;
        power *= 2;
        lam = 0;
      }
      if (k >= budget.max_steps_per_segment) break;
    }
    trace.events += tracker.events();

    Ordinal limit = next_limit(clock);
    LimitRecord record;
    record.limit = limit;
    State limit_state;
    if (cycle) {
      // Replay one period from a state on the cycle; the liminf of an
      // eventually periodic sequence is the minimum over the period.
      Tracker replay(m.spec.sigma, 1, nullptr);
      replay.reset(tortoise);
      State cur = tortoise;
      for (std::uint64_t i = 0; i < lam; ++i) {
        State nxt = successor(m.spec, cur);
        replay.record(cur, nxt, clock, i + 1);
        cur = std::move(nxt);
      }
      record.verified = true;
      record.via_cycle = true;
      record.period = lam;
      replay.for_each_cell([&](SymTrack& t, Cell& c, const std::string& name) {
        if (c.events > 0) record.cells.push_back({t.decl.name, name, TailClass::Periodic, c.min_seen});
      });
      limit_state = replay.build(kappa, [](const Cell& c) { return c.events > 0 ? c.min_seen : c.current; });
    } else {
      bool unresolved = false;
      std::map<const Cell*, Value> values;
      tracker.for_each_cell([&](SymTrack& t, Cell& c, const std::string& name) {
        TailVerdict v;
        if (c.events == 0) {
          v = {TailClass::Stable, c.current};
        } else if (k - c.last_event >= k / 2) {
          v = {TailClass::Stable, c.current};  // quiet for the second half of the segment
        } else {
          std::optional<Value> start;
          if (c.events <= tracker.window()) start = c.start;
          v = classify_tail(start, std::vector<Value>(c.window.begin(), c.window.end()));
        }
        if (v.tail == TailClass::Unknown) unresolved = true;
        values[&c] = v.value;
        if (c.events > 0) record.cells.push_back({t.decl.name, name, v.tail, v.value});
      });
      record.verified = false;
      record.via_cycle = false;
      if (unresolved) {
        trace.limits.push_back(record);
        emit_limit(sink, record);
        trace.outcome.kind = Outcome::Kind::LimitUnresolved;
        trace.outcome.limit = limit;
        trace.outcome.final_state = hare;
        trace.outcome.reason = "tail classification failed at " + limit.to_string();
        return finish();
      }
      limit_state = tracker.build(kappa, [&](const Cell& c) { return values.at(&c); });
    }

    if (mode == RunMode::Short && !(limit < kappa)) {
      trace.outcome.kind = Outcome::Kind::Failed;
      trace.outcome.error = ErrorCode::NotShort;
      trace.outcome.reason = "NotShort: the run reaches " + limit.to_string();
      trace.outcome.final_state = hare;
      return finish();
    }
    if (jumps >= budget.max_limit_jumps) {
      trace.outcome.kind = Outcome::Kind::OutOfBudget;
      trace.outcome.final_state = hare;
      trace.outcome.reason = "limit jump budget exhausted before " + limit.to_string();
      return finish();
    }
    ++jumps;
    trace.limits.push_back(record);
    emit_limit(sink, record);
    try {
      if (auto check = models_tci(limit_state, m.tci); !check) {
        const auto& r = check.reasons.front();
        throw Error(ErrorCode::D6Violation, "limit state violates " + std::string(to_string(r.code)) + " " + r.detail,
                    r.symbol);
      }
    } catch (const Error& e) {
      fail(e, limit_state);
      return finish();
    }
    clock = limit;
    s = std::move(limit_state);
    trace.snapshots.push_back({clock, s});
    emit_snapshot(sink, clock, s);
    note_state(s, clock);
  }
}

ReductionResult certify_reduction(const ValidatedMachine& m, const OrdinalSet& a, const OrdinalSet& b,
                                  const Budget& budget) {
  ReductionResult r;
  r.expected = b.normalized(m.spec.kappa);
  r.trace = run(m, a, budget, RunMode::Full);
  if (!r.trace.terminated()) {
    r.reason = "run did not terminate: " + std::string(to_string(r.trace.outcome.kind));
    if (!r.trace.outcome.reason.empty()) r.reason += " (" + r.trace.outcome.reason + ")";
    return r;
  }
  r.actual = r.trace.outcome.output;
  r.short_run = r.trace.is_short(m.spec.kappa);
  r.certified = r.actual == r.expected;
  if (!r.certified) r.reason = "output " + r.actual.to_string() + " differs from " + r.expected.to_string();
  return r;
}

}  // namespace gseq
