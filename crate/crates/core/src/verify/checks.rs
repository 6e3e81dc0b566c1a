use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Detail;
use crate::enumerate::{
    enum_matrices, enum_triangles, enum_wni_objects, predecessors, signed_count, wni_object_sign,
    MatrixKind, Statistic, TriangleClass,
};
use crate::error::Result;
use crate::evaluate::{
    alpha, asm_count, binomial, refined_asm, sum_operator, w_number, x_number, AlphaMethod,
    SumRecursion,
};
use crate::exactla::{build_matrix, det_exact, rank_exact, MatrixKind as Linear};
use crate::reference;
use crate::serialize::{deserialize, serialize, Format, Value};
use crate::stats::{sign_of, triangle_stats};
use crate::transform::{
    doubled_bottom, is_s1, matrix_to_triangle, mt_to_s1, reflect_wni, s1_to_mt,
    triangle_to_matrix, BijectionKind,
};
use crate::triangle::TriangularArray;

type Params = BTreeMap<String, i64>;

fn row_label(k: &[i64]) -> String {
    let cells: Vec<String> = k.iter().map(i64::to_string).collect();
    cells.join(",")
}

fn sign(e: i64) -> i64 {
    sign_of(e.rem_euclid(2) as usize)
}

fn increasing(n: i64) -> Vec<i64> {
    (1..=n).collect()
}

/// Weakly decreasing rows of every length in `1..=max_len` with entries in `1..=max_entry`.
fn weakly_decreasing_rows(max_len: i64, max_entry: i64) -> Vec<Vec<i64>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .into_iter()
            .flat_map(|r| {
                let top = r.last().copied().unwrap_or(max_entry);
                (1..=top).map(move |v| {
                    let mut r = r.clone();
                    r.push(v);
                    r
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

pub(super) fn theorem1(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for k in weakly_decreasing_rows(p["max_len"], p["max_entry"]) {
        out.push(Detail::new(
            format!("signed dd-count at ({})", row_label(&k)),
            alpha(&k, AlphaMethod::OperatorRecursion)?,
            signed_count(&k, TriangleClass::DMT, Statistic::DdWithPrefactor)?,
        ));
    }
    Ok(out)
}

/// Counts `n x n` ASMs by the column of the first row's 1.
fn first_row_distribution(n: usize) -> Vec<i64> {
    let mut counts = vec![0; n];
    for m in enum_matrices(MatrixKind::Asm, n) {
        let j = m.row(0).iter().position(|&e| e == 1).expect("first row has a 1");
        counts[j] += 1;
    }
    counts
}

pub(super) fn theorem2(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 1..=p["n_max"] {
        let counted = first_row_distribution(n as usize);
        for i in 1..=n {
            out.push(Detail::new(
                format!("A({n},{i}) against enumerated ASMs"),
                counted[(i - 1) as usize],
                refined_asm(n, i)?,
            ));
        }
        for i in 1..=2 * n - 1 {
            let mut k = vec![n - 1 + i];
            for v in (1..n).rev() {
                k.extend([v, v]);
            }
            let expected = if i <= n { refined_asm(n, i)? * sign(n - 1) } else { BigInt::zero() };
            out.push(Detail::new(
                format!("alpha({})", row_label(&k)),
                expected,
                alpha(&k, AlphaMethod::SignedDmtDP)?,
            ));
        }
    }
    Ok(out)
}

pub(super) fn reciprocity(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 1..=p["n_max"] {
        let up = increasing(n);
        let doubled = doubled_bottom(n as usize);
        let mt = alpha(&up, AlphaMethod::MonotoneDP)?;
        let asms = enum_matrices(MatrixKind::Asm, n as usize).len();
        out.push(Detail::new(format!("alpha({}) = ASM count", row_label(&up)), asms, mt.clone()));
        out.push(Detail::new(
            format!("alpha({}) = alpha({})", row_label(&doubled), row_label(&up)),
            mt,
            alpha(&doubled, AlphaMethod::SignedDmtDP)?,
        ));
    }
    Ok(out)
}

pub(super) fn wni(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 1..=p["n_max"] {
        for i in 1..=2 * n - 1 {
            out.push(Detail::new(format!("W({n},{i}) = X({n},{i})"), x_number(n, i)?, w_number(n, i)?));
        }
    }
    Ok(out)
}

pub(super) fn symmetry(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 1..=p["n_max"] {
        for i in 1..=2 * n - 1 {
            out.push(Detail::new(
                format!("W({n},{i}) = (-1)^(n-1) W({n},{})", 2 * n - i),
                w_number(n, 2 * n - i)? * sign(n - 1),
                w_number(n, i)?,
            ));
        }
    }
    Ok(out)
}

fn fixed_vector(n: i64, v: Vec<BigInt>, name: &str) -> Result<Vec<Detail>> {
    let m = build_matrix(Linear::EigenM, n as usize)?;
    let image = m.mul_vec(&v)?;
    Ok(v
        .into_iter()
        .zip(image)
        .enumerate()
        .map(|(i, (x, y))| Detail::new(format!("(M {name})_{} at n={n}", i + 1), x, y))
        .collect())
}

pub(super) fn les(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 1..=p["n_max"] {
        let w = (1..=2 * n - 1).map(|i| w_number(n, i)).collect::<Result<Vec<_>>>()?;
        out.extend(fixed_vector(n, w, "W")?);
    }
    Ok(out)
}

pub(super) fn eigen_x(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 1..=p["n_max"] {
        let x = (1..=2 * n - 1).map(|i| x_number(n, i)).collect::<Result<Vec<_>>>()?;
        out.extend(fixed_vector(n, x, "X")?);
    }
    Ok(out)
}

pub(super) fn eigen(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 1..=p["n_max"] {
        let s = build_matrix(Linear::S, n as usize)?;
        out.push(Detail::new(format!("rank S at n={n}"), 2 * n - 2, rank_exact(&s) as i64));
        if n >= 2 {
            let a = asm_count(n - 1)?;
            let behrend = det_exact(&build_matrix(Linear::Behrend, (n - 1) as usize)?)?;
            out.push(Detail::new(format!("A({}) by product formula and by Behrend determinant", n - 1), a.clone(), behrend));
            out.push(Detail::new(
                format!("det S' at n={n}"),
                a * sign(n - 1),
                det_exact(&build_matrix(Linear::Sprime, n as usize)?)?,
            ));
        }
    }
    Ok(out)
}

pub(super) fn recursion(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 2..=p["n_max"] {
        let mut rhs = BigInt::zero();
        for i in 1..n {
            rhs -= binomial(n - 1, i) * w_number(n - 1, i)?;
        }
        out.push(Detail::new(format!("W({n},1) from W({},.)", n - 1), rhs, w_number(n, 1)?));
    }
    Ok(out)
}

pub(super) fn vanishing(p: &Params) -> Result<Vec<Detail>> {
    let n = p["n"] as u32;
    let mut out = Vec::new();
    for code in 0..3i64.pow(n) {
        let k: Vec<i64> = (0..n).map(|t| code / 3i64.pow(t) % 3 + 1).collect();
        if k.windows(3).any(|w| w[0] == w[1] && w[1] == w[2]) {
            out.push(Detail::new(
                format!("alpha({}) by the operator recursion", row_label(&k)),
                0,
                alpha(&k, AlphaMethod::OperatorRecursion)?,
            ));
        }
    }
    Ok(out)
}

/// A polynomial of total degree at most 2 with small random coefficients.
#[derive(Debug)]
struct RandomPoly {
    constant: i64,
    linear: Vec<i64>,
    quadratic: Vec<Vec<i64>>,
}

impl RandomPoly {
    fn sample(rng: &mut ChaCha8Rng, vars: usize) -> Self {
        RandomPoly {
            constant: rng.gen_range(-5..=5),
            linear: (0..vars).map(|_| rng.gen_range(-5..=5)).collect(),
            quadratic: (0..vars).map(|_| (0..vars).map(|_| rng.gen_range(-3..=3)).collect()).collect(),
        }
    }

    fn eval(&self, l: &[i64]) -> BigInt {
        let mut v = BigInt::from(self.constant);
        for (a, x) in self.linear.iter().zip(l) {
            v += a * x;
        }
        for (row, x) in self.quadratic.iter().zip(l) {
            for (c, y) in row.iter().zip(l) {
                v += c * x * y;
            }
        }
        v
    }
}

pub(super) fn lemma2(p: &Params) -> Result<Vec<Detail>> {
    let mut rng = ChaCha8Rng::seed_from_u64(p["seed"] as u64);
    let mut out = Vec::new();
    while out.len() < p["samples"] as usize {
        let len = rng.gen_range(2..=p["max_len"] as usize);
        let mut k: Vec<i64> = (0..len).map(|_| rng.gen_range(1..=p["max_entry"])).collect();
        k.sort_by(|a, b| b.cmp(a));
        if k.windows(3).any(|w| w[0] == w[2]) {
            continue;
        }
        let a = RandomPoly::sample(&mut rng, len - 1);
        let eval = |l: &[i64]| a.eval(l);
        let fragments: BigInt = predecessors(&k, TriangleClass::DMT)?
            .into_iter()
            .map(|(l, sc)| a.eval(&l) * sign_of(sc))
            .sum();
        out.push(Detail::new(
            format!("sample {} at ({})", out.len() + 1, row_label(&k)),
            sum_operator(&eval, &k, SumRecursion::SplitLast)?,
            fragments,
        ));
    }
    Ok(out)
}

pub(super) fn stats_parity(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for k in weakly_decreasing_rows(p["max_len"], p["max_entry"]) {
        let n = k.len();
        let mut total = 0i64;
        let mut parity_ok = 0i64;
        let mut peaks_ok = 0i64;
        for t in enum_triangles(&k, TriangleClass::DMT)? {
            let s = triangle_stats(&t)?;
            total += 1;
            parity_ok += (sign_of(s.sc) == sign_of(n * (n - 1) / 2 + s.dd)) as i64;
            peaks_ok += (s.peaks == s.base_pairs) as i64;
        }
        let label = row_label(&k);
        out.push(Detail::new(format!("DMTs over ({label}) with matching parity"), total, parity_ok));
        out.push(Detail::new(format!("DMTs over ({label}) with peaks = base pairs"), total, peaks_ok));
        out.push(Detail::new(
            format!("sc-count = dd-count at ({label})"),
            signed_count(&k, TriangleClass::DMT, Statistic::DdWithPrefactor)?,
            signed_count(&k, TriangleClass::DMT, Statistic::Sc)?,
        ));
    }
    Ok(out)
}

pub(super) fn conjbij(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 1..=p["n_max"] {
        let bottom = doubled_bottom(n as usize);
        let target = alpha(&increasing(n), AlphaMethod::MonotoneDP)?;
        let mut materialized = 0i64;
        for t in enum_triangles(&bottom, TriangleClass::DMT)? {
            materialized += sign_of(triangle_stats(&t)?.dd_bar);
        }
        out.push(Detail::new(format!("dd_bar sum by enumeration, n={n}"), target.clone(), materialized));
        out.push(Detail::new(
            format!("dd_bar sum by row recursion, n={n}"),
            target,
            signed_count(&bottom, TriangleClass::DMT, Statistic::DdBar)?,
        ));
    }
    Ok(out)
}

/// `alpha(n, n-1, ..., 1)` for odd `n` from 3 to 13.
const TABLE: [(i64, i64); 6] = [(3, -1), (5, 3), (7, -26), (9, 646), (11, -45885), (13, 9304650)];

pub(super) fn table(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 2..=p["n_max"] {
        let expected = if n % 2 == 0 {
            0
        } else {
            match TABLE.iter().find(|(m, _)| *m == n) {
                Some(&(_, v)) => v,
                None => continue,
            }
        };
        let k: Vec<i64> = (1..=n).rev().collect();
        out.push(Detail::new(format!("alpha({})", row_label(&k)), expected, alpha(&k, AlphaMethod::Auto)?));
    }
    Ok(out)
}

pub(super) fn conjecture(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for m in 1..=p["m_max"] {
        let k: Vec<i64> = (1..=2 * m + 1).rev().collect();
        let evens: Vec<i64> = (1..=m).map(|t| 2 * t).collect();
        out.push(Detail::new(
            format!("alpha({}) = (-1)^{m} alpha({})", row_label(&k), row_label(&evens)),
            alpha(&evens, AlphaMethod::MonotoneDP)? * sign(m),
            alpha(&k, AlphaMethod::SignedDmtDP)?,
        ));
    }
    Ok(out)
}

pub(super) fn behrend(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 1..=p["n_max"] {
        let det = det_exact(&build_matrix(Linear::Behrend, n as usize)?)?;
        out.push(Detail::new(format!("Behrend determinant = A({n}) by product formula"), asm_count(n)?, det.clone()));
        if n <= 5 {
            out.push(Detail::new(
                format!("Behrend determinant = enumerated ASMs, n={n}"),
                enum_matrices(MatrixKind::Asm, n as usize).len(),
                det,
            ));
        }
    }
    Ok(out)
}

/// Roundtrip counts for one bijection over all matrices of a kind.
fn matrix_roundtrips(kind: MatrixKind, bij: BijectionKind, n: usize) -> Result<Detail> {
    let matrices = enum_matrices(kind, n);
    let mut ok = 0usize;
    for m in &matrices {
        let t = matrix_to_triangle(m, bij)?;
        if &triangle_to_matrix(&t, bij)? == m {
            ok += 1;
        }
    }
    Ok(Detail::new(format!("{bij:?} roundtrips at n={n}"), matrices.len(), ok))
}

fn through_json(v: Value) -> Result<Value> {
    let kind = v.kind();
    deserialize(&serialize(&v, Format::Json)?, kind, Format::Json)
}

pub(super) fn bijection(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 1..=p["asm_max"] as usize {
        out.push(matrix_roundtrips(MatrixKind::Asm, BijectionKind::MtAsm, n)?);
    }
    for n in 1..=p["n_max"] as usize {
        out.push(matrix_roundtrips(MatrixKind::TwoAsm, BijectionKind::Dmt2Asm, n)?);
        let dmts: Vec<TriangularArray> = enum_triangles(&doubled_bottom(n), TriangleClass::DMT)?.collect();
        let mut dmt_ok = 0usize;
        for t in &dmts {
            let m = triangle_to_matrix(t, BijectionKind::Dmt2Asm)?;
            dmt_ok += (&matrix_to_triangle(&m, BijectionKind::Dmt2Asm)? == t) as usize;
        }
        out.push(Detail::new(format!("DMT roundtrips at n={n}"), dmts.len(), dmt_ok));

        let s1: Vec<&TriangularArray> = dmts.iter().filter(|t| is_s1(t).unwrap_or(false)).collect();
        let mts: BTreeSet<TriangularArray> = enum_triangles(&increasing(n as i64), TriangleClass::MT)?.collect();
        out.push(Detail::new(format!("|S1| = number of MTs at n={n}"), mts.len(), s1.len()));
        let mut images = BTreeSet::new();
        let mut s1_ok = 0usize;
        for t in &s1 {
            let mt = s1_to_mt(t)?;
            s1_ok += (&&mt_to_s1(&mt)? == t) as usize;
            images.insert(mt);
        }
        out.push(Detail::new(format!("S1 -> MT -> S1 at n={n}"), s1.len(), s1_ok));
        out.push(Detail::new(format!("S1 images cover the MTs at n={n}"), mts.len(), images.intersection(&mts).count()));
    }
    let golden_t = reference::golden_dmt();
    let golden_m = reference::golden_two_asm();
    let forward = through_json(Value::Matrix(triangle_to_matrix(&golden_t, BijectionKind::Dmt2Asm)?))?;
    let backward = through_json(Value::Triangle(matrix_to_triangle(&golden_m, BijectionKind::Dmt2Asm)?))?;
    let golden_bytes = serialize(&Value::Matrix(golden_m.clone()), Format::Json)?;
    let forward_bytes = serialize(&forward, Format::Json)?;
    out.push(Detail::new("reference DMT maps to the reference 2-ASM", 1, (forward == Value::Matrix(golden_m)) as i64));
    out.push(Detail::new("reference 2-ASM maps to the reference DMT", 1, (backward == Value::Triangle(golden_t)) as i64));
    out.push(Detail::new("reference 2-ASM JSON bytes", 1, (golden_bytes == forward_bytes) as i64));
    Ok(out)
}

pub(super) fn wni_objects(p: &Params) -> Result<Vec<Detail>> {
    let mut out = Vec::new();
    for n in 1..=p["n_max"] {
        for i in 1..=2 * n - 1 {
            let objects = enum_wni_objects(n as usize, i as usize)?;
            let mut total = 0i64;
            let mut covariant = 0usize;
            let mut images = BTreeSet::new();
            for o in &objects {
                let s = wni_object_sign(o)?;
                total += s;
                let r = reflect_wni(o)?;
                covariant += (wni_object_sign(&r)? == s * sign(n - 1)) as usize;
                images.insert(r.matrix().clone());
            }
            let mirror: BTreeSet<_> = enum_wni_objects(n as usize, (2 * n - i) as usize)?
                .into_iter()
                .map(|o| o.matrix().clone())
                .collect();
            out.push(Detail::new(format!("signed W-objects = W({n},{i})"), w_number(n, i)?, total));
            out.push(Detail::new(format!("reflection sign rule on ({n},{i})"), objects.len(), covariant));
            out.push(Detail::new(format!("reflection onto ({n},{})", 2 * n - i), 1, (images == mirror) as i64));
        }
    }
    let reference = reference::w_object_4_3();
    let found: Vec<_> = enum_wni_objects(4, 3)?.into_iter().filter(|o| o.matrix() == &reference).collect();
    out.push(Detail::new("reference object among the (4,3) objects", 1, found.len()));
    if let Some(o) = found.first() {
        out.push(Detail::new("sign of the reference object", 1, wni_object_sign(o)?));
    }
    Ok(out)
}
