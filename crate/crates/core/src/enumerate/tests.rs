use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::evaluate::{alpha, sum_operator, w_number, AlphaMethod, SumRecursion};
use crate::fixtures::{dmts_63321, w_object_4_3};
use crate::machines::accepts;
use crate::machines::MachineId;
use crate::sign_matrix::SignMatrix;
use crate::stats::triangle_stats;
use crate::triangle::multiplicities;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn weakly_decreasing(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|r| {
                let top = r.last().copied().unwrap_or(hi);
                (lo..=top).map(move |v| {
                    let mut r = r.clone();
                    r.push(v);
                    r
                })
            })
            .collect();
    }
    out
}

/// Every row of the right length with entries in the range of `k`, filtered
/// by the fragment conditions written out directly.
fn brute_fragment_rows(k: &[i64]) -> BTreeSet<Vec<i64>> {
    let lo = *k.iter().min().unwrap();
    let hi = *k.iter().max().unwrap();
    let mut out = BTreeSet::new();
    let m = k.len() - 1;
    let width = (hi - lo + 1) as usize;
    for code in 0..width.pow(m as u32) {
        let mut c = code;
        let l: Vec<i64> = (0..m)
            .map(|_| {
                let v = lo + (c % width) as i64;
                c /= width;
                v
            })
            .collect();
        let interlaces = (0..m).all(|j| k[j] >= l[j] && l[j] >= k[j + 1]);
        let mult_ok = multiplicities(&l).values().all(|&c| c <= 2);
        let (mk, ml) = (multiplicities(k), multiplicities(&l));
        let nsd = ml.iter().all(|(v, &c)| c != 1 || mk.get(v) != Some(&1));
        if interlaces && mult_ok && nsd {
            out.insert(l);
        }
    }
    out
}

#[test]
fn predecessor_examples() {
    let p = predecessors(&[6, 3, 3, 2, 1], TriangleClass::DMT).unwrap();
    let rows: Vec<Vec<i64>> = p.iter().map(|(l, _)| l.clone()).collect();
    assert_eq!(rows, vec![vec![5, 3, 2, 2], vec![4, 3, 2, 2], vec![3, 3, 2, 2]]);
    let rows_seen: BTreeSet<Vec<i64>> = dmts_63321().iter().map(|t| t.row(3).to_vec()).collect();
    assert_eq!(rows.iter().cloned().collect::<BTreeSet<_>>(), rows_seen);
    assert_eq!(
        predecessors(&[1, 2], TriangleClass::MT).unwrap(),
        vec![(vec![2], 0), (vec![1], 0)]
    );
    for n in -2..5 {
        assert_eq!(predecessors(&[n, n], TriangleClass::DMT).unwrap(), vec![(vec![n], 0)]);
    }
    assert!(matches!(predecessors(&[1, 2], TriangleClass::DMT), Err(Error::InvalidInput(_))));
    assert!(matches!(predecessors(&[2, 1], TriangleClass::MT), Err(Error::InvalidInput(_))));
}

#[test]
fn fragment_rows_match_brute_force() {
    for len in 2..=5 {
        for k in weakly_decreasing(len, 1, 4) {
            let got: Vec<Vec<i64>> = dmt_rows_above(&k);
            let mut sorted = got.clone();
            sorted.sort_by(|a, b| b.cmp(a));
            assert_eq!(got, sorted, "order for {k:?}");
            let expect = if multiplicities(&k).values().any(|&c| c > 2) {
                BTreeSet::new()
            } else {
                brute_fragment_rows(&k)
            };
            assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), expect, "{k:?}");
        }
    }
}

#[test]
fn dmts_63321_is_reproduced() {
    let got: BTreeSet<TriangularArray> =
        enum_triangles(&[6, 3, 3, 2, 1], TriangleClass::DMT).unwrap().collect();
    let expect: BTreeSet<TriangularArray> = dmts_63321().into_iter().collect();
    assert_eq!(got, expect);
    let even = got
        .iter()
        .filter(|t| triangle_stats(t).unwrap().dd.is_multiple_of(2))
        .count();
    assert_eq!(even, 4);
}

#[test]
fn triangle_stream_examples() {
    for class in [TriangleClass::MT, TriangleClass::DMT] {
        let all: Vec<TriangularArray> = enum_triangles(&[5], class).unwrap().collect();
        assert_eq!(all, vec![TriangularArray::new(vec![vec![5]]).unwrap()]);
    }
    let mts: Vec<TriangularArray> = enum_triangles(&[1, 2, 3], TriangleClass::MT).unwrap().collect();
    assert_eq!(mts.len(), 7);
    assert!(mts.iter().all(validate_monotone));
    assert_eq!(enum_triangles(&[2, 2, 2], TriangleClass::DMT).unwrap().count(), 0);
    assert!(enum_triangles(&[1, 3, 2], TriangleClass::MT).is_err());
}

#[test]
fn streams_emit_valid_distinct_triangles() {
    for len in 1..=4 {
        for k in weakly_decreasing(len, 1, 4) {
            let all: Vec<TriangularArray> = enum_triangles(&k, TriangleClass::DMT).unwrap().collect();
            assert!(all.iter().all(validate_dmt));
            assert!(all.iter().all(|t| t.bottom() == &k[..]));
            let distinct: BTreeSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            assert_eq!(big(all.len() as i64), signed_count(&k, TriangleClass::DMT, Statistic::Plain).unwrap());
        }
    }
}

#[test]
fn signed_count_examples() {
    let k = [6, 3, 3, 2, 1];
    assert_eq!(signed_count(&k, TriangleClass::DMT, Statistic::DdWithPrefactor).unwrap(), big(3));
    assert_eq!(signed_count(&k, TriangleClass::DMT, Statistic::Sc).unwrap(), big(3));
    assert_eq!(signed_count(&k, TriangleClass::DMT, Statistic::Plain).unwrap(), big(5));
    assert_eq!(
        signed_count(&[2, 4, 5, 8, 9], TriangleClass::MT, Statistic::Plain).unwrap(),
        big(16939)
    );
    assert_eq!(
        signed_count(&[3, 3, 2, 2, 1, 1], TriangleClass::DMT, Statistic::DdBar).unwrap(),
        big(7)
    );
    assert!(signed_count(&[1, 2], TriangleClass::MT, Statistic::DdBar).is_err());
}

#[test]
fn signed_counts_match_materialized_statistics() {
    for len in 1..=4 {
        for k in weakly_decreasing(len, 1, 4) {
            let n = k.len();
            let (mut sc, mut dd, mut dd_bar) = (0i64, 0i64, 0i64);
            for t in enum_triangles(&k, TriangleClass::DMT).unwrap() {
                let s = triangle_stats(&t).unwrap();
                sc += sign_of(s.sc);
                dd += sign_of(s.dd);
                dd_bar += sign_of(s.dd_bar);
                assert_eq!(sign_of(s.sc), sign_of(n * (n - 1) / 2 + s.dd), "{t}");
                assert_eq!(s.peaks, s.base_pairs, "{t}");
            }
            let dd = dd * sign_of(n * (n - 1) / 2);
            assert_eq!(signed_count(&k, TriangleClass::DMT, Statistic::Sc).unwrap(), big(sc));
            assert_eq!(signed_count(&k, TriangleClass::DMT, Statistic::DdWithPrefactor).unwrap(), big(dd));
            assert_eq!(signed_count(&k, TriangleClass::DMT, Statistic::DdBar).unwrap(), big(dd_bar));
            assert_eq!(
                big(dd),
                alpha(&k, AlphaMethod::OperatorRecursion).unwrap(),
                "{k:?}"
            );
        }
    }
}

#[test]
fn mt_counts_are_asm_counts() {
    for n in 1..=4usize {
        let k: Vec<i64> = (1..=n as i64).collect();
        assert_eq!(
            signed_count(&k, TriangleClass::MT, Statistic::Plain).unwrap(),
            big(enum_matrices(MatrixKind::Asm, n).len() as i64)
        );
    }
}

fn brute_matrices(rows: usize, cols: usize, row_ok: &dyn Fn(usize, &[i8]) -> bool, col_machine: MachineId) -> Vec<SignMatrix> {
    let mut out = Vec::new();
    let cells = rows * cols;
    for code in 0..3usize.pow(cells as u32) {
        let mut c = code;
        let entries: Vec<i8> = (0..cells)
            .map(|_| {
                let v = (c % 3) as i8 - 1;
                c /= 3;
                v
            })
            .collect();
        let m = SignMatrix::new(rows, cols, entries).unwrap();
        let rows_fine = (0..rows).all(|r| row_ok(r, m.row(r)));
        let cols_fine = (0..cols).all(|j| accepts(col_machine, &m.column(j)).unwrap());
        if rows_fine && cols_fine {
            out.push(m);
        }
    }
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    out
}

#[test]
fn matrix_enumeration_matches_filtered_brute_force() {
    let asm_row = |_: usize, w: &[i8]| accepts(MachineId::AsmWord, w).unwrap();
    for n in 1..=2 {
        assert_eq!(
            enum_matrices(MatrixKind::Asm, n),
            brute_matrices(n, n, &asm_row, MachineId::AsmWord)
        );
        assert_eq!(
            enum_matrices(MatrixKind::TwoAsm, n),
            brute_matrices(2 * n, n, &asm_row, MachineId::TwoAsmColumn)
        );
    }
    for (n, i) in [(2, 1), (2, 2), (2, 3)] {
        let row_ok = |r: usize, w: &[i8]| {
            let m = if r + 1 == 2 * n - i { MachineId::ModifiedRow } else { MachineId::AsmWord };
            accepts(m, w).unwrap()
        };
        let got: Vec<SignMatrix> = enum_wni_objects(n, i).unwrap().into_iter().map(|o| o.matrix().clone()).collect();
        assert_eq!(got, brute_matrices(2 * n - 1, n - 1, &row_ok, MachineId::TwoAsmColumn));
    }
}

#[test]
fn matrix_examples_and_validity() {
    let one = enum_matrices(MatrixKind::Asm, 1);
    assert_eq!(one, vec![SignMatrix::from_rows(vec![vec![1]]).unwrap()]);
    assert_eq!(enum_matrices(MatrixKind::Asm, 3).len(), 7);
    assert_eq!(enum_matrices(MatrixKind::Asm, 4).len(), 42);
    for n in 1..=3 {
        for kind in [MatrixKind::Asm, MatrixKind::TwoAsm] {
            let all = enum_matrices(kind, n);
            assert!(all.windows(2).all(|w| w[0].entries() < w[1].entries()));
            let col_machine = if kind == MatrixKind::Asm { MachineId::AsmWord } else { MachineId::TwoAsmColumn };
            for m in &all {
                assert!((0..m.rows()).all(|r| accepts(MachineId::AsmWord, m.row(r)).unwrap()));
                assert!((0..m.cols()).all(|j| accepts(col_machine, &m.column(j)).unwrap()));
            }
        }
    }
}

#[test]
fn wni_examples() {
    let objects = enum_wni_objects(4, 3).unwrap();
    let reference = objects.iter().find(|o| o.matrix() == &w_object_4_3()).expect("reference object");
    assert_eq!(wni_object_sign(reference).unwrap(), 1);
    let single = enum_wni_objects(1, 1).unwrap();
    assert_eq!(single.len(), 1);
    assert_eq!((single[0].matrix().rows(), single[0].matrix().cols()), (1, 0));
    assert_eq!(wni_object_sign(&single[0]).unwrap(), 1);
    let total: i64 = objects.iter().map(|o| wni_object_sign(o).unwrap()).sum();
    assert_eq!(total, 7);
    assert!(enum_wni_objects(2, 4).is_err());
    assert!(WniObject::new(4, 2, w_object_4_3()).is_err());
    assert!(WniObject::new(4, 3, w_object_4_3()).is_ok());
}

#[test]
fn wni_signed_sums_are_w_numbers() {
    for n in 1..=3usize {
        for i in 1..=2 * n - 1 {
            let total: i64 = enum_wni_objects(n, i)
                .unwrap()
                .iter()
                .map(|o| wni_object_sign(o).unwrap())
                .sum();
            assert_eq!(big(total), w_number(n as i64, i as i64).unwrap(), "n={n} i={i}");
        }
    }
}

fn admissible_dmt_row() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..=4, 1..=4).prop_filter_map("weakly decreasing, multiplicity <= 2", |mut k| {
        k.sort_by(|a, b| b.cmp(a));
        (!k.windows(3).any(|w| w[0] == w[2])).then_some(k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn operator_sums_over_fragments(k in admissible_dmt_row(), coeffs in prop::collection::vec(-4i64..=4, 7)) {
        prop_assume!(k.len() >= 2);
        let a = move |l: &[i64]| {
            let mut v = big(coeffs[0]);
            for (t, x) in l.iter().enumerate() {
                v += big(coeffs[1 + t] * x + coeffs[4 + t] * x * x);
            }
            v
        };
        let via_operator = sum_operator(&a, &k, SumRecursion::SplitLast).unwrap();
        let via_fragments: BigInt = predecessors(&k, TriangleClass::DMT)
            .unwrap()
            .into_iter()
            .map(|(l, sc)| a(&l) * sign_of(sc))
            .sum();
        prop_assert_eq!(via_operator, via_fragments);
    }
}
