#pragma once

#include <cstdint>
#include <optional>
#include <set>

#include "gseq/tm.hpp"

namespace gseq::testing {

struct TmRun {
  bool halted = false;
  std::uint64_t steps = 0;
  std::set<std::uint64_t> tape;
};

// Plain Turing machine on a tape of 0/1 cells, head at 0. Left at 0 stays at
// 0; with a width, right at width - 1 stays there. No branch rows.
inline TmRun simulate_tm(const TmSpec& t, std::set<std::uint64_t> tape, std::uint64_t max_steps,
                         std::optional<std::uint64_t> width = std::nullopt) {
  TmRun r;
  std::size_t state = 0;
  std::uint64_t head = 0;
  while (state != t.final_state()) {
    if (r.steps >= max_steps) {
      r.tape = std::move(tape);
      return r;
    }
    int bit = tape.count(head) ? 1 : 0;
    const TmAction& a = t.delta.at({state, bit});
    if (a.write) tape.insert(head);
    else tape.erase(head);
    state = a.next;
    if (a.move == Move::Left) {
      if (head > 0) --head;
    } else if (!width || head + 1 < *width) {
      ++head;
    }
    ++r.steps;
  }
  r.halted = true;
  r.tape = std::move(tape);
  return r;
}

}  // namespace gseq::testing
