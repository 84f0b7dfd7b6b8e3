//! Deterministic single-tape Turing machines.
//!
//! The model is frozen as follows. The tape is semi-infinite to the right,
//! blank-filled, with the blank written `#`. A left move at cell 0 leaves
//! the head in place (wall clamp). A run halts by entering a halting
//! state; halting states have no outgoing rules, and the transition table
//! must be total on every non-halting state. Step counts are the number
//! of transitions taken, so a machine whose initial state is halting
//! halts in 0 steps.
//!
//! Symbols and states are stored as small indices; the blank is always
//! symbol 0, input symbols follow it, work symbols come last. User
//! symbol names may not be `#` or start with `$`: those name the blank
//! and the placeholder channel symbols of the compiled tilesets, and are
//! namespaced away from every user alphabet at construction time.

use std::fmt;

use thiserror::Error;

/// State index.
pub type State = u16;

/// Tape-alphabet index. Index 0 is always the blank.
pub type TapeSym = u16;

/// The blank tape symbol `#`.
pub const BLANK: TapeSym = 0;

/// Head move of a transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::L => "L",
            Move::R => "R",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TmError {
    #[error("missing or unsupported header line")]
    BadHeader,
    #[error("line {0}: unreadable directive")]
    BadLine(usize),
    #[error("empty or whitespace-carrying name {0:?}")]
    BadName(String),
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("unknown tape symbol {0}")]
    UnknownSymbol(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("duplicate rule for state {state} reading {symbol}")]
    DuplicateRule { state: String, symbol: String },
    #[error("state {state} has no rule for symbol {symbol}")]
    MissingRule { state: String, symbol: String },
    #[error("halting state {0} has an outgoing rule")]
    RuleForHaltingState(String),
    #[error("symbol name {0} is reserved")]
    ReservedSymbol(String),
    #[error("input word leaves the input alphabet")]
    InputOutsideAlphabet,
    #[error("run left the provided tape width")]
    WidthExceeded,
    #[error("machine needs more than {0} names of one kind")]
    TooLarge(u32),
}

/// A deterministic Turing machine with validated transition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    name: String,
    states: Vec<String>,
    /// Tape alphabet names; `symbols[0]` is `#`.
    symbols: Vec<String>,
    /// Input symbols are `1..=input_len`.
    input_len: u16,
    initial: State,
    halting: Vec<bool>,
    /// State-major table: `table[q * symbols.len() + a]`.
    table: Vec<Option<(State, TapeSym, Move)>>,
}

fn check_name(name: &str) -> Result<(), TmError> {
    if name.is_empty() || name.chars().any(char::is_whitespace) {
        return Err(TmError::BadName(name.to_string()));
    }
    Ok(())
}

fn check_symbol_name(name: &str) -> Result<(), TmError> {
    check_name(name)?;
    if name == "#" || name.starts_with('$') {
        return Err(TmError::ReservedSymbol(name.to_string()));
    }
    Ok(())
}

impl TuringMachine {
    /// Build and validate a machine. `input` lists the input alphabet Σ,
    /// `work` the remaining tape symbols; the blank is implicit. Rules
    /// are `(state, read, next state, write, move)`.
    pub fn new(
        name: &str,
        states: &[&str],
        input: &[&str],
        work: &[&str],
        initial: &str,
        halting: &[&str],
        rules: &[(&str, &str, &str, &str, Move)],
    ) -> Result<TuringMachine, TmError> {
        check_name(name)?;
        if states.is_empty() {
            return Err(TmError::UnknownState(initial.to_string()));
        }
        let cap = u16::MAX as usize;
        if states.len() > cap || input.len() + work.len() + 1 > cap {
            return Err(TmError::TooLarge(u16::MAX as u32));
        }
        let mut state_names = Vec::with_capacity(states.len());
        for s in states {
            check_name(s)?;
            if state_names.iter().any(|t| t == s) {
                return Err(TmError::DuplicateName(s.to_string()));
            }
            state_names.push(s.to_string());
        }
        let mut symbol_names = vec!["#".to_string()];
        for s in input.iter().chain(work) {
            check_symbol_name(s)?;
            if symbol_names.iter().any(|t| t == s) {
                return Err(TmError::DuplicateName(s.to_string()));
            }
            symbol_names.push(s.to_string());
        }

        let state_id = |n: &str| -> Result<State, TmError> {
            state_names
                .iter()
                .position(|s| s == n)
                .map(|i| i as State)
                .ok_or_else(|| TmError::UnknownState(n.to_string()))
        };
        let symbol_id = |n: &str| -> Result<TapeSym, TmError> {
            symbol_names
                .iter()
                .position(|s| s == n)
                .map(|i| i as TapeSym)
                .ok_or_else(|| TmError::UnknownSymbol(n.to_string()))
        };

        let initial = state_id(initial)?;
        let mut halting_flags = vec![false; state_names.len()];
        for h in halting {
            halting_flags[state_id(h)? as usize] = true;
        }

        let cols = symbol_names.len();
        let mut table = vec![None; state_names.len() * cols];
        for (q, a, q2, b, mv) in rules {
            let q = state_id(q)?;
            let a = symbol_id(a)?;
            let q2 = state_id(q2)?;
            let b = symbol_id(b)?;
            if halting_flags[q as usize] {
                return Err(TmError::RuleForHaltingState(state_names[q as usize].clone()));
            }
            let slot = &mut table[q as usize * cols + a as usize];
            if slot.is_some() {
                return Err(TmError::DuplicateRule {
                    state: state_names[q as usize].clone(),
                    symbol: symbol_names[a as usize].clone(),
                });
            }
            *slot = Some((q2, b, *mv));
        }
        for (q, flag) in halting_flags.iter().enumerate() {
            if *flag {
                continue;
            }
            for a in 0..cols {
                if table[q * cols + a].is_none() {
                    return Err(TmError::MissingRule {
                        state: state_names[q].clone(),
                        symbol: symbol_names[a].clone(),
                    });
                }
            }
        }

        Ok(TuringMachine {
            name: name.to_string(),
            states: state_names,
            symbols: symbol_names,
            input_len: input.len() as u16,
            initial,
            halting: halting_flags,
            table,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    /// Size of the input alphabet Σ; its symbols are `1..=input_len()`.
    pub fn input_len(&self) -> u16 {
        self.input_len
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_halting(&self, q: State) -> bool {
        self.halting[q as usize]
    }

    pub fn halting_states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.states.len() as State).filter(|&q| self.halting[q as usize])
    }

    pub fn state_name(&self, q: State) -> &str {
        &self.states[q as usize]
    }

    pub fn symbol_name(&self, a: TapeSym) -> &str {
        &self.symbols[a as usize]
    }

    pub fn state_id(&self, name: &str) -> Option<State> {
        self.states.iter().position(|s| s == name).map(|i| i as State)
    }

    pub fn symbol_id(&self, name: &str) -> Option<TapeSym> {
        self.symbols.iter().position(|s| s == name).map(|i| i as TapeSym)
    }

    pub fn rule(&self, q: State, a: TapeSym) -> Option<(State, TapeSym, Move)> {
        self.table[q as usize * self.symbols.len() + a as usize]
    }

    /// Every defined rule as `(state, read, next, write, move)`.
    pub fn rules(&self) -> impl Iterator<Item = (State, TapeSym, State, TapeSym, Move)> + '_ {
        let cols = self.symbols.len();
        self.table.iter().enumerate().filter_map(move |(i, slot)| {
            slot.map(|(q2, b, mv)| ((i / cols) as State, (i % cols) as TapeSym, q2, b, mv))
        })
    }

    /// Parse a word over Σ: whitespace-separated symbol names, or one
    /// name per character when the word carries no whitespace.
    pub fn parse_word(&self, text: &str) -> Result<Vec<TapeSym>, TmError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        let lookup = |name: &str| -> Result<TapeSym, TmError> {
            let a = self
                .symbol_id(name)
                .ok_or_else(|| TmError::UnknownSymbol(name.to_string()))?;
            if a == BLANK || a > self.input_len {
                return Err(TmError::InputOutsideAlphabet);
            }
            Ok(a)
        };
        if text.contains(char::is_whitespace) {
            text.split_whitespace().map(lookup).collect()
        } else {
            text.chars().map(|c| lookup(&c.to_string())).collect()
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("turing-machine v1\n");
        out.push_str(&format!("name {}\n", self.name));
        out.push_str("input");
        for a in 1..=self.input_len {
            out.push_str(&format!(" {}", self.symbols[a as usize]));
        }
        out.push('\n');
        out.push_str("work");
        for a in self.input_len + 1..self.symbols.len() as u16 {
            out.push_str(&format!(" {}", self.symbols[a as usize]));
        }
        out.push('\n');
        out.push_str("states");
        for s in &self.states {
            out.push_str(&format!(" {s}"));
        }
        out.push('\n');
        out.push_str(&format!("initial {}\n", self.states[self.initial as usize]));
        out.push_str("halting");
        for q in self.halting_states() {
            out.push_str(&format!(" {}", self.states[q as usize]));
        }
        out.push('\n');
        for (q, a, q2, b, mv) in self.rules() {
            out.push_str(&format!(
                "rule {} {} {} {} {}\n",
                self.states[q as usize],
                self.symbols[a as usize],
                self.states[q2 as usize],
                self.symbols[b as usize],
                mv,
            ));
        }
        out
    }

    /// Parse the plain-text transition-table format: a `turing-machine v1`
    /// header, then `name`, `input`, `work`, `states`, `initial`,
    /// `halting` directives in any order and one `rule q a q' b L|R`
    /// line per transition. Blank lines are skipped.
    pub fn from_text(text: &str) -> Result<TuringMachine, TmError> {
        let mut lines = text.lines().enumerate();
        let header = lines.next().map(|(_, l)| l.trim()).unwrap_or_default();
        if header != "turing-machine v1" {
            return Err(TmError::BadHeader);
        }
        let mut name = None;
        let mut input: Option<Vec<&str>> = None;
        let mut work: Option<Vec<&str>> = None;
        let mut states: Option<Vec<&str>> = None;
        let mut initial = None;
        let mut halting: Option<Vec<&str>> = None;
        let mut rules = Vec::new();
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = || TmError::BadLine(i + 1);
            let mut parts = line.split_whitespace();
            fn rest<'a>(p: std::str::SplitWhitespace<'a>) -> Vec<&'a str> {
                p.collect()
            }
            match parts.next().ok_or_else(bad)? {
                "name" => {
                    let v = parts.next().ok_or_else(bad)?;
                    if name.replace(v).is_some() || parts.next().is_some() {
                        return Err(bad());
                    }
                }
                "input" => {
                    if input.replace(rest(parts)).is_some() {
                        return Err(bad());
                    }
                }
                "work" => {
                    if work.replace(rest(parts)).is_some() {
                        return Err(bad());
                    }
                }
                "states" => {
                    if states.replace(rest(parts)).is_some() {
                        return Err(bad());
                    }
                }
                "initial" => {
                    let v = parts.next().ok_or_else(bad)?;
                    if initial.replace(v).is_some() || parts.next().is_some() {
                        return Err(bad());
                    }
                }
                "halting" => {
                    if halting.replace(rest(parts)).is_some() {
                        return Err(bad());
                    }
                }
                "rule" => {
                    let q = parts.next().ok_or_else(bad)?;
                    let a = parts.next().ok_or_else(bad)?;
                    let q2 = parts.next().ok_or_else(bad)?;
                    let b = parts.next().ok_or_else(bad)?;
                    let mv = match parts.next().ok_or_else(bad)? {
                        "L" => Move::L,
                        "R" => Move::R,
                        _ => return Err(bad()),
                    };
                    if parts.next().is_some() {
                        return Err(bad());
                    }
                    rules.push((q, a, q2, b, mv));
                }
                _ => return Err(bad()),
            }
        }
        TuringMachine::new(
            name.ok_or(TmError::BadHeader)?,
            &states.unwrap_or_default(),
            &input.unwrap_or_default(),
            &work.unwrap_or_default(),
            initial.ok_or(TmError::BadHeader)?,
            &halting.unwrap_or_default(),
            &rules,
        )
    }
}

/// Result of a bounded run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    /// Entered a halting state after `steps` transitions. The tape has
    /// trailing blanks trimmed.
    Halted { steps: u64, state: State, head: usize, tape: Vec<TapeSym> },
    /// Still live after `max_steps` transitions.
    Running { state: State, head: usize, tape: Vec<TapeSym> },
}

impl RunOutcome {
    pub fn halted_steps(&self) -> Option<u64> {
        match self {
            RunOutcome::Halted { steps, .. } => Some(*steps),
            RunOutcome::Running { .. } => None,
        }
    }
}

fn check_input(m: &TuringMachine, input: &[TapeSym]) -> Result<(), TmError> {
    if input.iter().any(|&a| a == BLANK || a > m.input_len()) {
        return Err(TmError::InputOutsideAlphabet);
    }
    Ok(())
}

fn trim_blanks(mut tape: Vec<TapeSym>) -> Vec<TapeSym> {
    while tape.last() == Some(&BLANK) {
        tape.pop();
    }
    tape
}

/// Run `m` on `input` for at most `max_steps` transitions.
pub fn simulate_tm(
    m: &TuringMachine,
    input: &[TapeSym],
    max_steps: u64,
) -> Result<RunOutcome, TmError> {
    check_input(m, input)?;
    let mut tape = input.to_vec();
    let mut head = 0usize;
    let mut q = m.initial();
    let mut steps = 0u64;
    loop {
        if m.is_halting(q) {
            return Ok(RunOutcome::Halted { steps, state: q, head, tape: trim_blanks(tape) });
        }
        if steps == max_steps {
            return Ok(RunOutcome::Running { state: q, head, tape: trim_blanks(tape) });
        }
        let a = tape.get(head).copied().unwrap_or(BLANK);
        let (q2, b, mv) = m.rule(q, a).ok_or_else(|| TmError::MissingRule {
            state: m.state_name(q).to_string(),
            symbol: m.symbol_name(a).to_string(),
        })?;
        if head >= tape.len() {
            tape.resize(head + 1, BLANK);
        }
        tape[head] = b;
        head = match mv {
            Move::L => head.saturating_sub(1),
            Move::R => head + 1,
        };
        q = q2;
        steps += 1;
    }
}

/// One configuration of a fixed-width trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    /// Exactly `width` cells.
    pub tape: Vec<TapeSym>,
    pub state: State,
    pub head: usize,
}

/// A fixed-width prefix of a run, one row per time step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub width: usize,
    /// `rows[t]` is the configuration after `t` transitions. Once the
    /// machine halts the remaining rows repeat the halting configuration.
    pub rows: Vec<TraceRow>,
    /// Halting step, when it falls inside the traced window.
    pub halted_at: Option<u64>,
}

/// Trace `rows` configurations of width `width`; errors if the head
/// would leave the window.
pub fn trace_tm(
    m: &TuringMachine,
    input: &[TapeSym],
    rows: usize,
    width: usize,
) -> Result<Trace, TmError> {
    check_input(m, input)?;
    if input.len() > width {
        return Err(TmError::WidthExceeded);
    }
    let mut tape = vec![BLANK; width];
    tape[..input.len()].copy_from_slice(input);
    let mut head = 0usize;
    let mut q = m.initial();
    let mut halted_at = None;
    let mut out = Vec::with_capacity(rows);
    for t in 0..rows {
        if halted_at.is_none() && m.is_halting(q) {
            halted_at = Some(t as u64);
        }
        out.push(TraceRow { tape: tape.clone(), state: q, head });
        if t + 1 == rows {
            break;
        }
        // A halted machine idles: the configuration repeats unchanged.
        if halted_at.is_some() {
            continue;
        }
        let a = tape[head];
        let (q2, b, mv) = m.rule(q, a).ok_or_else(|| TmError::MissingRule {
            state: m.state_name(q).to_string(),
            symbol: m.symbol_name(a).to_string(),
        })?;
        tape[head] = b;
        head = match mv {
            Move::L => head.saturating_sub(1),
            Move::R => head + 1,
        };
        if head >= width {
            return Err(TmError::WidthExceeded);
        }
        q = q2;
    }
    Ok(Trace { width, rows: out, halted_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::testkit::reference_run;
    use proptest::prelude::*;

    fn tiny() -> TuringMachine {
        TuringMachine::new(
            "tiny",
            &["P", "H"],
            &[],
            &["x"],
            "P",
            &["H"],
            &[("P", "#", "H", "x", Move::R), ("P", "x", "P", "x", Move::L)],
        )
        .unwrap()
    }

    #[test]
    fn zero_step_halt_and_step_counting() {
        let m = tiny();
        match simulate_tm(&m, &[], 10).unwrap() {
            RunOutcome::Halted { steps, state, head, tape } => {
                assert_eq!(steps, 1);
                assert_eq!(state, m.state_id("H").unwrap());
                assert_eq!(head, 1);
                assert_eq!(tape, vec![m.symbol_id("x").unwrap()]);
            }
            other => panic!("expected halt, got {other:?}"),
        }
        // Halting exactly at the step budget still reports a halt.
        assert!(matches!(simulate_tm(&m, &[], 1).unwrap(), RunOutcome::Halted { .. }));
        assert!(matches!(simulate_tm(&m, &[], 0).unwrap(), RunOutcome::Running { .. }));
    }

    #[test]
    fn left_moves_at_the_wall_stay_put() {
        // One state rewriting the wall cell forever between two symbols.
        let m = TuringMachine::new(
            "wall",
            &["A"],
            &[],
            &["x"],
            "A",
            &[],
            &[("A", "#", "A", "x", Move::L), ("A", "x", "A", "#", Move::L)],
        )
        .unwrap();
        match simulate_tm(&m, &[], 101).unwrap() {
            RunOutcome::Running { head, tape, .. } => {
                assert_eq!(head, 0);
                assert_eq!(tape, vec![m.symbol_id("x").unwrap()]);
            }
            other => panic!("expected running, got {other:?}"),
        }
    }

    #[test]
    fn construction_rejects_malformed_tables() {
        let base = |rules: &[(&str, &str, &str, &str, Move)]| {
            TuringMachine::new("m", &["A", "H"], &["a"], &[], "A", &["H"], rules)
        };
        let ok = [("A", "#", "H", "#", Move::R), ("A", "a", "H", "a", Move::R)];
        assert!(base(&ok).is_ok());
        assert_eq!(
            base(&ok[..1]),
            Err(TmError::MissingRule { state: "A".into(), symbol: "a".into() })
        );
        assert_eq!(
            base(&[ok[0], ok[0], ok[1]]),
            Err(TmError::DuplicateRule { state: "A".into(), symbol: "#".into() })
        );
        let mut with_halt_rule = ok.to_vec();
        with_halt_rule.push(("H", "#", "H", "#", Move::R));
        assert_eq!(base(&with_halt_rule), Err(TmError::RuleForHaltingState("H".into())));
        assert_eq!(
            base(&[ok[0], ("A", "a", "B", "a", Move::R)]),
            Err(TmError::UnknownState("B".into()))
        );
        assert_eq!(
            base(&[ok[0], ("A", "z", "H", "a", Move::R)]),
            Err(TmError::UnknownSymbol("z".into()))
        );
    }

    #[test]
    fn reserved_symbols_are_rejected_at_construction() {
        for bad in ["#", "$", "$x", "$#"] {
            let got = TuringMachine::new("m", &["H"], &[bad], &[], "H", &["H"], &[]);
            assert_eq!(got, Err(TmError::ReservedSymbol(bad.into())), "input {bad}");
            let got = TuringMachine::new("m", &["H"], &[], &[bad], "H", &["H"], &[]);
            assert_eq!(got, Err(TmError::ReservedSymbol(bad.into())), "work {bad}");
        }
        // States may collide with symbol names; namespaces are separate.
        assert!(TuringMachine::new("m", &["a"], &["a"], &[], "a", &["a"], &[]).is_ok());
    }

    #[test]
    fn parser_rejects_broken_directives() {
        assert_eq!(TuringMachine::from_text(""), Err(TmError::BadHeader));
        assert_eq!(TuringMachine::from_text("tileset v1\n"), Err(TmError::BadHeader));
        let text = "turing-machine v1\nname m\nstates H\ninitial H\nhalting H\nbogus x\n";
        assert_eq!(TuringMachine::from_text(text), Err(TmError::BadLine(6)));
        let text = "turing-machine v1\nname m\nstates H\ninitial H\nhalting H\nrule H # H #\n";
        assert_eq!(TuringMachine::from_text(text), Err(TmError::BadLine(6)));
        let text = "turing-machine v1\nname m\nname n\nstates H\ninitial H\nhalting H\n";
        assert_eq!(TuringMachine::from_text(text), Err(TmError::BadLine(3)));
        let text = "turing-machine v1\nstates H\ninitial H\nhalting H\n";
        assert_eq!(TuringMachine::from_text(text), Err(TmError::BadHeader));
    }

    #[test]
    fn words_parse_per_character_or_whitespace_separated() {
        let m = TuringMachine::new("m", &["H"], &["a", "b"], &["w"], "H", &["H"], &[]).unwrap();
        let a = m.symbol_id("a").unwrap();
        let b = m.symbol_id("b").unwrap();
        assert_eq!(m.parse_word("abba").unwrap(), vec![a, b, b, a]);
        assert_eq!(m.parse_word("a b b a").unwrap(), vec![a, b, b, a]);
        assert_eq!(m.parse_word("  "), Ok(vec![]));
        assert_eq!(m.parse_word("w"), Err(TmError::InputOutsideAlphabet));
        assert_eq!(m.parse_word("#"), Err(TmError::InputOutsideAlphabet));
        assert_eq!(m.parse_word("z"), Err(TmError::UnknownSymbol("z".into())));
        assert_eq!(
            simulate_tm(&m, &[m.symbol_id("w").unwrap()], 5),
            Err(TmError::InputOutsideAlphabet)
        );
    }

    #[test]
    fn trace_width_is_enforced() {
        let m = crate::tm::samples::right_mover();
        assert!(trace_tm(&m, &[], 8, 8).is_ok());
        assert_eq!(trace_tm(&m, &[], 9, 8), Err(TmError::WidthExceeded));
    }

    /// A machine from a seed: random total table over up to 4 live states,
    /// up to 3 tape symbols, an optional halting state.
    fn random_machine(seed: u64) -> TuringMachine {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let nq = rng.gen_range(1..=4usize);
        let nsym = rng.gen_range(1..=3usize);
        let with_halt = rng.gen_bool(0.7);
        let state_names: Vec<String> =
            (0..nq).map(|i| format!("q{i}")).chain(with_halt.then(|| "halt".into())).collect();
        let symbol_names: Vec<String> = (1..nsym).map(|i| format!("s{i}")).collect();
        let total = if with_halt { nq + 1 } else { nq };
        let mut rules = Vec::new();
        for q in 0..nq {
            for a in 0..nsym {
                let q2 = rng.gen_range(0..total);
                let b = rng.gen_range(0..nsym);
                let mv = if rng.gen_bool(0.5) { Move::L } else { Move::R };
                rules.push((
                    state_names[q].clone(),
                    if a == 0 { "#".to_string() } else { symbol_names[a - 1].clone() },
                    state_names[q2].clone(),
                    if b == 0 { "#".to_string() } else { symbol_names[b - 1].clone() },
                    mv,
                ));
            }
        }
        let states: Vec<&str> = state_names.iter().map(String::as_str).collect();
        let work: Vec<&str> = symbol_names.iter().map(String::as_str).collect();
        let rule_refs: Vec<(&str, &str, &str, &str, Move)> = rules
            .iter()
            .map(|(q, a, q2, b, mv)| (q.as_str(), a.as_str(), q2.as_str(), b.as_str(), *mv))
            .collect();
        let halting: Vec<&str> = if with_halt { vec!["halt"] } else { vec![] };
        TuringMachine::new("random", &states, &[], &work, "q0", &halting, &rule_refs).unwrap()
    }

    proptest! {
        // the production simulator agrees with the reference one on
        // random machines, including step counts and final tapes
        #[test]
        fn random_machines_agree_with_the_reference(seed in any::<u64>(), max_steps in 0u64..60) {
            let m = random_machine(seed);
            let got = simulate_tm(&m, &[], max_steps).unwrap();
            let want = reference_run(&m, &[], max_steps);
            prop_assert_eq!(got, want);
        }

        // text serialisation is lossless
        #[test]
        fn random_machines_roundtrip(seed in any::<u64>()) {
            let m = random_machine(seed);
            let back = TuringMachine::from_text(&m.to_text()).unwrap();
            prop_assert_eq!(m, back);
        }

        // a trace row equals the bounded simulation of the same length
        #[test]
        fn random_traces_match_bounded_runs(seed in any::<u64>(), rows in 1usize..20) {
            let m = random_machine(seed);
            let trace = trace_tm(&m, &[], rows, 24).unwrap();
            prop_assert_eq!(trace.rows.len(), rows);
            let last = &trace.rows[rows - 1];
            let sim = simulate_tm(&m, &[], (rows - 1) as u64).unwrap();
            let (state, head, tape) = match sim {
                RunOutcome::Halted { state, head, tape, .. } => (state, head, tape),
                RunOutcome::Running { state, head, tape } => (state, head, tape),
            };
            prop_assert_eq!(last.state, state);
            prop_assert_eq!(last.head, head);
            let mut dense = vec![BLANK; 24];
            dense[..tape.len()].copy_from_slice(&tape);
            prop_assert_eq!(&last.tape, &dense);
        }
    }
}
