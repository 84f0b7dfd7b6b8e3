//! Test-only reference simulator, kept structurally apart from the
//! production one: sparse map tape, rule lookup through a rebuilt
//! association map, explicit wall handling. Disagreement between the two
//! flags a defect in either.

use std::collections::BTreeMap;

use super::machine::{Move, RunOutcome, State, TapeSym, TuringMachine, BLANK};

pub(crate) fn reference_run(m: &TuringMachine, input: &[TapeSym], max_steps: u64) -> RunOutcome {
    let rules: BTreeMap<(State, TapeSym), (State, TapeSym, Move)> =
        m.rules().map(|(q, a, q2, b, mv)| ((q, a), (q2, b, mv))).collect();
    let mut tape: BTreeMap<u64, TapeSym> = BTreeMap::new();
    for (i, &a) in input.iter().enumerate() {
        if a != BLANK {
            tape.insert(i as u64, a);
        }
    }
    let mut q = m.initial();
    let mut pos = 0u64;
    let mut taken = 0u64;
    while !m.is_halting(q) && taken < max_steps {
        let read = tape.get(&pos).copied().unwrap_or(BLANK);
        let (q2, write, mv) = rules[&(q, read)];
        if write == BLANK {
            tape.remove(&pos);
        } else {
            tape.insert(pos, write);
        }
        pos = match mv {
            Move::L if pos == 0 => 0,
            Move::L => pos - 1,
            Move::R => pos + 1,
        };
        q = q2;
        taken += 1;
    }
    let width = tape.keys().next_back().map_or(0, |k| k + 1) as usize;
    let mut dense = vec![BLANK; width];
    for (k, v) in &tape {
        dense[*k as usize] = *v;
    }
    if m.is_halting(q) {
        RunOutcome::Halted { steps: taken, state: q, head: pos as usize, tape: dense }
    } else {
        RunOutcome::Running { state: q, head: pos as usize, tape: dense }
    }
}
