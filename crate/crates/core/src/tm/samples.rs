//! Sample machines used across the test suites and the command line.
//!
//! The collection spans the behaviours the compiled tilesets must
//! distinguish: halting after 0, 2, 3 and 11 steps, and three machines
//! that never halt, one of which leans on the tape wall forever.

use super::machine::TuringMachine;

fn sample(text: &str) -> TuringMachine {
    TuringMachine::from_text(text).expect("sample machine is well-formed")
}

/// Initial state already halting: halts in 0 steps on every input.
pub fn immediate_halt() -> TuringMachine {
    sample(
        "turing-machine v1\n\
         name immediate-halt\n\
         input a\n\
         states H\n\
         initial H\n\
         halting H\n",
    )
}

/// Writes one mark, steps back onto it, halts: 2 steps on empty input.
pub fn two_step_halt() -> TuringMachine {
    sample(
        "turing-machine v1\n\
         name two-step-halt\n\
         work 1\n\
         states P Q H\n\
         initial P\n\
         halting H\n\
         rule P # Q 1 R\n\
         rule P 1 H 1 R\n\
         rule Q # H # L\n\
         rule Q 1 H 1 L\n",
    )
}

/// Three live states; on empty input lays a marker, extends, sweeps back
/// and converts, halting after 3 steps with `1 1` on the tape.
pub fn three_state_sweeper() -> TuringMachine {
    sample(
        "turing-machine v1\n\
         name sweeper\n\
         input 1\n\
         work m\n\
         states S W B H\n\
         initial S\n\
         halting H\n\
         rule S # W m R\n\
         rule S 1 H 1 R\n\
         rule S m H m R\n\
         rule W # B 1 L\n\
         rule W 1 W 1 R\n\
         rule W m H m R\n\
         rule B # H # R\n\
         rule B 1 B 1 L\n\
         rule B m H 1 R\n",
    )
}

/// Writes three cells, then converts them in leaning sweeps against the
/// wall; the longest halting run of the collection.
pub fn countdown() -> TuringMachine {
    sample(
        "turing-machine v1\n\
         name countdown\n\
         input a b\n\
         states W1 W2 W3 C D H\n\
         initial W1\n\
         halting H\n\
         rule W1 # W2 a R\n\
         rule W1 a H a R\n\
         rule W1 b H b R\n\
         rule W2 # W3 a R\n\
         rule W2 a H a R\n\
         rule W2 b H b R\n\
         rule W3 # C a L\n\
         rule W3 a H a R\n\
         rule W3 b H b R\n\
         rule C # H # R\n\
         rule C a C b L\n\
         rule C b D b R\n\
         rule D # H # R\n\
         rule D a C b L\n\
         rule D b D b R\n",
    )
}

/// One state walking right forever.
pub fn right_mover() -> TuringMachine {
    sample(
        "turing-machine v1\n\
         name right-mover\n\
         states R\n\
         initial R\n\
         rule R # R # R\n",
    )
}

/// Two states alternating while walking right forever.
pub fn two_state_right_mover() -> TuringMachine {
    sample(
        "turing-machine v1\n\
         name ping-pong-mover\n\
         states P Q\n\
         initial P\n\
         rule P # Q # R\n\
         rule Q # P # R\n",
    )
}

/// Grows the tape one cell at a time with full leftward sweeps in
/// between, hammering the wall clamp; never halts.
pub fn zigzag_grower() -> TuringMachine {
    sample(
        "turing-machine v1\n\
         name zigzag-grower\n\
         input a b\n\
         states A B\n\
         initial A\n\
         rule A # B a L\n\
         rule A a A a R\n\
         rule A b A b R\n\
         rule B # A # R\n\
         rule B a B b L\n\
         rule B b A b R\n",
    )
}

/// The whole collection, halting machines first.
pub fn battery() -> Vec<TuringMachine> {
    vec![
        immediate_halt(),
        two_step_halt(),
        three_state_sweeper(),
        countdown(),
        right_mover(),
        two_state_right_mover(),
        zigzag_grower(),
    ]
}
