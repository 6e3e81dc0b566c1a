use crate::machines::symbolwise::{is_accept, start, step, Reachability};
use crate::machines::{generate, MachineId};
use crate::sign_matrix::SignMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// `n x n` alternating sign matrices.
    Asm,
    /// `2n x n` matrices with ASM-word rows and 2-ASM columns.
    TwoAsm,
}

/// Matrices whose columns are words of `column_machine` and whose row `r` is
/// a word of `row_machines[r]`, sorted row-major with -1 < 0 < 1.
pub(crate) fn enum_by_columns(
    cols: usize,
    column_machine: MachineId,
    row_machines: &[MachineId],
) -> Vec<SignMatrix> {
    let rows = row_machines.len();
    let columns = generate(column_machine, rows);
    let reach: Vec<Reachability> = row_machines
        .iter()
        .map(|&m| Reachability::new(m, cols))
        .collect();

    struct Search<'a> {
        cols: usize,
        columns: &'a [Vec<i8>],
        row_machines: &'a [MachineId],
        reach: &'a [Reachability],
        picked: Vec<usize>,
        out: Vec<SignMatrix>,
    }

    impl Search<'_> {
        fn run(&mut self, states: &[u8]) {
            let j = self.picked.len();
            if j == self.cols {
                if states
                    .iter()
                    .zip(self.row_machines)
                    .all(|(&s, &m)| is_accept(m, s))
                {
                    self.emit();
                }
                return;
            }
            'columns: for c in 0..self.columns.len() {
                let mut next = Vec::with_capacity(states.len());
                for (r, &sym) in self.columns[c].iter().enumerate() {
                    match step(self.row_machines[r], states[r], j, sym) {
                        Some(s) if self.reach[r].viable(j + 1, s) => next.push(s),
                        _ => continue 'columns,
                    }
                }
                self.picked.push(c);
                self.run(&next);
                self.picked.pop();
            }
        }

        fn emit(&mut self) {
            let rows = self.row_machines.len();
            let mut m = SignMatrix::zeros(rows, self.cols);
            for (j, &c) in self.picked.iter().enumerate() {
                for (i, &v) in self.columns[c].iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            self.out.push(m);
        }
    }

    let mut search = Search {
        cols,
        columns: &columns,
        row_machines,
        reach: &reach,
        picked: Vec::new(),
        out: Vec::new(),
    };
    let initial = vec![start(); rows];
    if initial.iter().enumerate().all(|(r, &s)| reach[r].viable(0, s)) {
        search.run(&initial);
    }
    let mut out = search.out;
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    out
}

/// All matrices of the kind and size, row-major lexicographic with -1 < 0 < 1.
pub fn enum_matrices(kind: MatrixKind, n: usize) -> Vec<SignMatrix> {
    match kind {
        MatrixKind::Asm => enum_by_columns(n, MachineId::AsmWord, &vec![MachineId::AsmWord; n]),
        MatrixKind::TwoAsm => {
            enum_by_columns(n, MachineId::TwoAsmColumn, &vec![MachineId::AsmWord; 2 * n])
        }
    }
}
