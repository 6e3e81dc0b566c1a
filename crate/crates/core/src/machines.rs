//! The constrained-word machines generating rows and columns of ASMs, 2-ASMs
//! and W-objects.
//!
//! States are partial sums. The ASM machine has states 0 and 1: a `0` loops, a
//! `1` moves 0 -> 1 and a `-1` moves 1 -> 0. The 2-ASM column machine rests
//! only at 0 and 2 and moves with composite two-symbol edges:
//!
//! | edge      | from | to |
//! |-----------|------|----|
//! | `0`       | 0    | 0  |
//! | `(1, 1)`  | 0    | 2  |
//! | `(1, -1)` | 0    | 0  |
//! | `0`       | 2    | 2  |
//! | `(-1,-1)` | 2    | 0  |
//! | `(-1, 1)` | 2    | 2  |
//!
//! The modified row machine is the ASM machine accepting at 0, and the S1
//! column machine is the 2-ASM column machine restricted to words whose
//! prefix sums after an even number of symbols lie in {0, 2}.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MachineId {
    AsmWord,
    TwoAsmColumn,
    ModifiedRow,
    S1Column,
}

impl MachineId {
    pub const ALL: [MachineId; 4] = [
        MachineId::AsmWord,
        MachineId::TwoAsmColumn,
        MachineId::ModifiedRow,
        MachineId::S1Column,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MachineId::AsmWord => "asm-word",
            MachineId::TwoAsmColumn => "2asm-column",
            MachineId::ModifiedRow => "modified-row",
            MachineId::S1Column => "s1-column",
        }
    }

    fn is_two_asm(self) -> bool {
        matches!(self, MachineId::TwoAsmColumn | MachineId::S1Column)
    }
}

impl fmt::Display for MachineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MachineId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MachineId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown machine '{s}'")))
    }
}

/// One edge of a machine. Single-symbol edges belong to the ASM machines,
/// composite edges to the 2-ASM column machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    /// The `0`-loop at state `sigma`.
    ZeroLoop { sigma: u8 },
    /// `1`: 0 -> 1.
    Up,
    /// `-1`: 1 -> 0.
    Down,
    /// `(1, 1)`: 0 -> 2.
    Rise,
    /// `(1, -1)`: loop at 0.
    BounceLow,
    /// `(-1, -1)`: 2 -> 0.
    Fall,
    /// `(-1, 1)`: loop at 2.
    BounceHigh,
}

impl Step {
    pub fn symbols(self) -> &'static [i8] {
        match self {
            Step::ZeroLoop { .. } => &[0],
            Step::Up => &[1],
            Step::Down => &[-1],
            Step::Rise => &[1, 1],
            Step::BounceLow => &[1, -1],
            Step::Fall => &[-1, -1],
            Step::BounceHigh => &[-1, 1],
        }
    }

    /// (source state, target state)
    fn endpoints(self) -> (u8, u8) {
        match self {
            Step::ZeroLoop { sigma } => (sigma, sigma),
            Step::Up => (0, 1),
            Step::Down => (1, 0),
            Step::Rise => (0, 2),
            Step::BounceLow => (0, 0),
            Step::Fall => (2, 0),
            Step::BounceHigh => (2, 2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepTrace {
    pub steps: Vec<Step>,
    pub sigma0_zero_loops: usize,
}

impl StepTrace {
    /// Steps other than the 0-loop at state 0; the per-column edge count used
    /// by the W-object sign.
    pub fn weighted_edges(&self) -> usize {
        self.steps.len() - self.sigma0_zero_loops
    }
}

fn check_symbols(word: &[i8]) -> Result<()> {
    match word.iter().position(|s| !(-1..=1).contains(s)) {
        Some(i) => Err(Error::invalid(format!(
            "symbol {} at position {} is not in {{-1, 0, 1}}",
            word[i],
            i + 1
        ))),
        None => Ok(()),
    }
}

pub fn accepts(machine: MachineId, word: &[i8]) -> Result<bool> {
    check_symbols(word)?;
    Ok(parse_unchecked(machine, word).is_ok())
}

/// Decomposes an accepted word into machine edges.
pub fn parse_steps(machine: MachineId, word: &[i8]) -> Result<StepTrace> {
    check_symbols(word)?;
    parse_unchecked(machine, word)
}

fn reject(machine: MachineId, pos: usize, why: &str) -> Error {
    Error::parse(format!("{machine} symbol {}", pos + 1), why)
}

fn parse_unchecked(machine: MachineId, word: &[i8]) -> Result<StepTrace> {
    let mut steps = Vec::new();
    let mut sigma: u8 = 0;
    let mut pos = 0;
    if machine.is_two_asm() {
        while pos < word.len() {
            let step = match (sigma, word[pos], word.get(pos + 1).copied()) {
                (s, 0, _) => Step::ZeroLoop { sigma: s },
                (0, 1, Some(1)) => Step::Rise,
                (0, 1, Some(-1)) => Step::BounceLow,
                (2, -1, Some(-1)) => Step::Fall,
                (2, -1, Some(1)) => Step::BounceHigh,
                (_, _, None) => return Err(reject(machine, pos, "word ends inside a composite edge")),
                _ => return Err(reject(machine, pos, "no edge for this symbol")),
            };
            if machine == MachineId::S1Column && step.symbols().len() == 2 && pos % 2 == 1 {
                return Err(reject(machine, pos, "odd partial sum after an even prefix"));
            }
            sigma = step.endpoints().1;
            pos += step.symbols().len();
            steps.push(step);
        }
        if sigma != 2 {
            return Err(reject(machine, word.len(), "column does not end at state 2"));
        }
    } else {
        for (i, &sym) in word.iter().enumerate() {
            let step = match (sigma, sym) {
                (s, 0) => Step::ZeroLoop { sigma: s },
                (0, 1) => Step::Up,
                (1, -1) => Step::Down,
                _ => return Err(reject(machine, i, "partial sum leaves {0, 1}")),
            };
            sigma = step.endpoints().1;
            steps.push(step);
        }
        let accept = if machine == MachineId::AsmWord { 1 } else { 0 };
        if sigma != accept {
            return Err(reject(machine, word.len(), "word ends in a non-accepting state"));
        }
    }
    let sigma0_zero_loops = steps
        .iter()
        .filter(|s| **s == Step::ZeroLoop { sigma: 0 })
        .count();
    Ok(StepTrace {
        steps,
        sigma0_zero_loops,
    })
}

/// Replays a trace from the start state, returning the consumed word and the
/// final state. Fails if a step does not leave the current state.
pub fn replay(machine: MachineId, trace: &StepTrace) -> Result<(Vec<i8>, u8)> {
    let mut sigma = 0;
    let mut word = Vec::new();
    for (i, step) in trace.steps.iter().enumerate() {
        let composite = step.symbols().len() == 2;
        if composite != machine.is_two_asm() && !matches!(step, Step::ZeroLoop { .. }) {
            return Err(Error::invalid(format!("step {} is not an edge of {machine}", i + 1)));
        }
        let (from, to) = step.endpoints();
        if from != sigma {
            return Err(Error::invalid(format!(
                "step {} starts at state {from} but the machine is at {sigma}",
                i + 1
            )));
        }
        word.extend_from_slice(step.symbols());
        sigma = to;
    }
    Ok((word, sigma))
}

/// Symbol-at-a-time view of a machine used for generation and for pruning
/// partial matrices. The 2-ASM machines get two transient states: 1 reached
/// from 0 (`PEND_LOW`) and 1 reached from 2 (`PEND_HIGH`).
pub(crate) mod symbolwise {
    use super::MachineId;

    pub const PEND_LOW: u8 = 1;
    pub const PEND_HIGH: u8 = 3;

    pub fn start() -> u8 {
        0
    }

    /// `pos` is the number of symbols consumed before `sym`.
    pub fn step(machine: MachineId, state: u8, pos: usize, sym: i8) -> Option<u8> {
        match machine {
            MachineId::AsmWord | MachineId::ModifiedRow => match (state, sym) {
                (s, 0) => Some(s),
                (0, 1) => Some(1),
                (1, -1) => Some(0),
                _ => None,
            },
            MachineId::TwoAsmColumn | MachineId::S1Column => {
                let next = match (state, sym) {
                    (0, 0) => 0,
                    (0, 1) => PEND_LOW,
                    (PEND_LOW, 1) => 2,
                    (PEND_LOW, -1) => 0,
                    (2, 0) => 2,
                    (2, -1) => PEND_HIGH,
                    (PEND_HIGH, -1) => 0,
                    (PEND_HIGH, 1) => 2,
                    _ => return None,
                };
                let after = pos + 1;
                if machine == MachineId::S1Column
                    && after.is_multiple_of(2)
                    && (next == PEND_LOW || next == PEND_HIGH)
                {
                    return None;
                }
                Some(next)
            }
        }
    }

    pub fn is_accept(machine: MachineId, state: u8) -> bool {
        match machine {
            MachineId::AsmWord => state == 1,
            MachineId::ModifiedRow => state == 0,
            MachineId::TwoAsmColumn | MachineId::S1Column => state == 2,
        }
    }

    /// `table[pos][state]`: can a word of total length `len` that is in
    /// `state` after `pos` symbols still be completed to an accepted word.
    pub struct Reachability {
        table: Vec<[bool; 4]>,
    }

    impl Reachability {
        pub fn new(machine: MachineId, len: usize) -> Self {
            let mut table = vec![[false; 4]; len + 1];
            for s in 0..4u8 {
                table[len][s as usize] = is_accept(machine, s);
            }
            for pos in (0..len).rev() {
                for s in 0..4u8 {
                    table[pos][s as usize] = [-1i8, 0, 1].iter().any(|&sym| {
                        step(machine, s, pos, sym).is_some_and(|t| table[pos + 1][t as usize])
                    });
                }
            }
            Reachability { table }
        }

        pub fn viable(&self, pos: usize, state: u8) -> bool {
            self.table[pos][state as usize]
        }
    }
}

/// All accepted words of the given length in lexicographic order with
/// -1 < 0 < 1.
pub fn generate(machine: MachineId, length: usize) -> Vec<Vec<i8>> {
    use symbolwise::{step, Reachability};

    fn dfs(
        machine: MachineId,
        reach: &Reachability,
        state: u8,
        word: &mut Vec<i8>,
        length: usize,
        out: &mut Vec<Vec<i8>>,
    ) {
        if word.len() == length {
            out.push(word.clone());
            return;
        }
        for sym in [-1i8, 0, 1] {
            if let Some(next) = step(machine, state, word.len(), sym) {
                if reach.viable(word.len() + 1, next) {
                    word.push(sym);
                    dfs(machine, reach, next, word, length, out);
                    word.pop();
                }
            }
        }
    }

    let reach = Reachability::new(machine, length);
    let mut out = Vec::new();
    if reach.viable(0, symbolwise::start()) {
        dfs(machine, &reach, symbolwise::start(), &mut Vec::new(), length, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_words(len: usize) -> Vec<Vec<i8>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    [-1i8, 0, 1].into_iter().map(move |s| {
                        let mut w = w.clone();
                        w.push(s);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Nonzero entries alternate, starting and ending with 1.
    fn prose_asm_word(w: &[i8]) -> bool {
        let nz: Vec<i8> = w.iter().copied().filter(|&x| x != 0).collect();
        !nz.is_empty() && nz.iter().enumerate().all(|(i, &x)| x == if i % 2 == 0 { 1 } else { -1 }) && nz.len() % 2 == 1
    }

    /// Prefix sums in {0,1,2}, total 2, and never two consecutive prefix sums equal to 1.
    fn prose_two_asm_column(w: &[i8]) -> bool {
        let mut sums = vec![0i32];
        for &x in w {
            sums.push(sums.last().unwrap() + x as i32);
        }
        sums.iter().all(|s| (0..=2).contains(s))
            && *sums.last().unwrap() == 2
            && sums.windows(2).all(|p| !(p[0] == 1 && p[1] == 1))
    }

    #[test]
    fn accepts_examples() {
        assert!(accepts(MachineId::AsmWord, &[0, 1, 0]).unwrap());
        assert!(!accepts(MachineId::AsmWord, &[1, -1]).unwrap());
        assert!(!accepts(MachineId::TwoAsmColumn, &[1, 0, 1, 0]).unwrap());
        // sums to 3 and has two consecutive partial sums equal to 1
        assert!(!accepts(MachineId::TwoAsmColumn, &[0, 0, 1, 1, -1, 0, 1, 1, 0, 0]).unwrap());
        assert!(accepts(MachineId::TwoAsmColumn, &[0, 0, 1, 1, -1, -1, 1, 1, 0, 0]).unwrap());
        assert!(accepts(MachineId::ModifiedRow, &[1, -1, 0]).unwrap());
        assert!(!accepts(MachineId::ModifiedRow, &[0, 1, 0]).unwrap());
        assert!(matches!(accepts(MachineId::AsmWord, &[2]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn golden_columns_are_two_asm_words() {
        let columns: [[i8; 10]; 5] = [
            [0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
            [0, 0, 0, 1, -1, 0, 1, 1, 0, 0],
            [1, 1, 0, -1, 1, -1, -1, 0, 1, 1],
            [0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
        ];
        for c in columns {
            assert!(accepts(MachineId::TwoAsmColumn, &c).unwrap(), "{c:?}");
        }
    }

    #[test]
    fn parse_examples() {
        let t = parse_steps(MachineId::TwoAsmColumn, &[0, 0, 0, 1, 1, 0, 0]).unwrap();
        assert_eq!((t.steps.len(), t.sigma0_zero_loops), (6, 3));
        let t = parse_steps(MachineId::TwoAsmColumn, &[1, 1, 0, -1, -1, 1, 1]).unwrap();
        assert_eq!((t.steps.len(), t.sigma0_zero_loops), (4, 0));
        assert_eq!(t.steps, vec![Step::Rise, Step::ZeroLoop { sigma: 2 }, Step::Fall, Step::Rise]);
        let t = parse_steps(MachineId::AsmWord, &[1]).unwrap();
        assert_eq!(t.steps, vec![Step::Up]);
        assert!(matches!(
            parse_steps(MachineId::AsmWord, &[1, -1]),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn generate_examples() {
        assert_eq!(generate(MachineId::AsmWord, 1), vec![vec![1]]);
        assert_eq!(
            generate(MachineId::AsmWord, 3),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, -1, 1], vec![1, 0, 0]]
        );
        assert_eq!(generate(MachineId::TwoAsmColumn, 2), vec![vec![1, 1]]);
        assert_eq!(generate(MachineId::ModifiedRow, 0), vec![Vec::<i8>::new()]);
        assert!(generate(MachineId::AsmWord, 0).is_empty());
    }

    #[test]
    fn generate_matches_filtered_brute_force() {
        for machine in MachineId::ALL {
            for len in 0..=6 {
                let filtered: Vec<Vec<i8>> = all_words(len)
                    .into_iter()
                    .filter(|w| accepts(machine, w).unwrap())
                    .collect();
                assert_eq!(generate(machine, len), filtered, "{machine} length {len}");
            }
        }
    }

    #[test]
    fn machines_match_prose_definitions() {
        for len in 0..=8 {
            for w in all_words(len) {
                assert_eq!(accepts(MachineId::AsmWord, &w).unwrap(), prose_asm_word(&w), "{w:?}");
                assert_eq!(
                    accepts(MachineId::TwoAsmColumn, &w).unwrap(),
                    prose_two_asm_column(&w),
                    "{w:?}"
                );
                let mut sum = 0i32;
                let mut even_ok = true;
                for (i, &x) in w.iter().enumerate() {
                    sum += x as i32;
                    if (i + 1) % 2 == 0 && sum == 1 {
                        even_ok = false;
                    }
                }
                assert_eq!(
                    accepts(MachineId::S1Column, &w).unwrap(),
                    prose_two_asm_column(&w) && even_ok,
                    "{w:?}"
                );
            }
        }
    }

    #[test]
    fn parse_replay_roundtrip() {
        for machine in MachineId::ALL {
            for len in 0..=8 {
                for w in generate(machine, len) {
                    let trace = parse_steps(machine, &w).unwrap();
                    let (word, sigma) = replay(machine, &trace).unwrap();
                    assert_eq!(word, w);
                    assert!(symbolwise::is_accept(machine, sigma));
                }
            }
        }
    }

    #[test]
    fn machine_names_roundtrip() {
        for m in MachineId::ALL {
            assert_eq!(m.name().parse::<MachineId>().unwrap(), m);
        }
        assert!("dfa".parse::<MachineId>().is_err());
    }
}
