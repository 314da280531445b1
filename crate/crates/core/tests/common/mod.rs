//! Oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use link4::cell24::{ridges, Ridge};
use link4::enumerate::{coset_enumerate, EnumOptions, Strategy};
use link4::pipeline::{parse_plans, FiberSpec, VerificationPlan, REFERENCE_PLANS};
use link4::presentation::{ridge_cycle_relators, ridge_cycles, tietze_simplify};
use link4::{
    abelianization, decode_code, smith_normal_form, BigMatrix, FPresentation, PairingScheme, Word,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Link structure of each double cover: (tori, Klein bottles).
pub const LINKS: [(&str, usize, usize); 12] = [
    ("1011", 5, 0),
    ("71", 6, 0),
    ("23", 7, 0),
    ("1092", 8, 0),
    ("1091", 9, 0),
    ("231", 3, 4),
    ("112", 4, 2),
    ("56", 4, 3),
    ("92", 5, 1),
    ("51", 5, 2),
    ("40", 6, 1),
    ("36", 6, 2),
];

/// Published ridge-cycle relators.
pub const M56_RELATORS: [&str; 24] = [
    "g^-1j^-1h^-1i",
    "g^-1ch^-1c",
    "e^-1j^-1fi",
    "e^-1dfc",
    "hj^-1gi",
    "e^-1d^-1fc^-1",
    "hd^-1gd^-1",
    "ej^-1f^-1i",
    "g^-1l^-1h^-1k",
    "g^-1ah^-1a",
    "e^-1le^-1k",
    "e^-1aea",
    "hl^-1gk",
    "hb^-1gb^-1",
    "f^-1lf^-1k",
    "f^-1b^-1fb^-1",
    "i^-1k^-1ik",
    "i^-1bia",
    "c^-1k^-1d^-1k",
    "c^-1bc^-1a",
    "j^-1ljl^-1",
    "j^-1b^-1ja^-1",
    "dlcl^-1",
    "db^-1da^-1",
];

pub const M1091_RELATORS: [&str; 24] = [
    "g^-1jh^-1i",
    "g^-1dh^-1c",
    "e^-1jf^-1i",
    "e^-1df^-1c",
    "hjgi",
    "hc^-1gd^-1",
    "f^-1je^-1i",
    "f^-1c^-1e^-1d^-1",
    "g^-1lh^-1k",
    "g^-1bh^-1a",
    "e^-1lfk",
    "e^-1bfa",
    "hlgk",
    "ha^-1gb^-1",
    "fle^-1k",
    "fa^-1e^-1b^-1",
    "i^-1k^-1ik",
    "i^-1bia",
    "c^-1k^-1d^-1k",
    "c^-1bd^-1a",
    "jlj^-1l^-1",
    "ja^-1j^-1b^-1",
    "dlcl^-1",
    "da^-1cb^-1",
];

pub const M36_RELATORS: [&str; 24] = [
    "g^-1j^-1g^-1i",
    "g^-1c^-1gc",
    "e^-1jf^-1i",
    "e^-1cfc",
    "h^-1j^-1h^-1i",
    "h^-1d^-1hd",
    "ej^-1fi^-1",
    "e^-1dfd",
    "g^-1l^-1h^-1k",
    "g^-1a^-1ha",
    "e^-1le^-1k",
    "e^-1b^-1ea",
    "g^-1kh^-1l^-1",
    "gb^-1h^-1b",
    "f^-1k^-1f^-1l^-1",
    "f^-1b^-1fa",
    "i^-1l^-1i^-1k",
    "i^-1b^-1ia",
    "c^-1ld^-1k",
    "c^-1a^-1da",
    "jkjl^-1",
    "ja^-1j^-1b",
    "c^-1kd^-1l",
    "cb^-1d^-1b",
];

pub fn word(s: &str) -> Word {
    Word::parse(s, &PairingScheme::gen_names()).unwrap()
}

pub fn reference_plan(id: &str) -> VerificationPlan {
    parse_plans(REFERENCE_PLANS)
        .0
        .into_iter()
        .find(|p| p.id.as_deref() == Some(id))
        .unwrap()
}

/// Fraction-free (Bareiss) determinant.
pub fn det(m: &BigMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub type Perm = Vec<usize>;

pub fn compose(a: &Perm, b: &Perm) -> Perm {
    // apply a, then b
    a.iter().map(|&x| b[x]).collect()
}

pub fn inverse(a: &Perm) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn evaluate(w: &Word, gens: &[Perm]) -> Perm {
    let n = gens[0].len();
    w.letters().iter().fold((0..n).collect(), |acc, l| {
        let g = &gens[l.gen()];
        compose(
            &acc,
            &if l.is_inverse() {
                inverse(g)
            } else {
                g.clone()
            },
        )
    })
}

/// Order of the permutation group generated by `gens`, by closing under multiplication.
pub fn closure_order(gens: &[Perm]) -> usize {
    let id: Perm = (0..gens[0].len()).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = compose(&p, g);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

/// Permutation from 1-based disjoint cycles.
pub fn cycles(n: usize, cs: &[&[usize]]) -> Perm {
    let mut p: Perm = (0..n).collect();
    for c in cs {
        for (i, &x) in c.iter().enumerate() {
            p[x - 1] = c[(i + 1) % c.len()] - 1;
        }
    }
    p
}

pub fn rotation(n: usize) -> Perm {
    (0..n).map(|i| (i + 1) % n).collect()
}

pub fn reflection(n: usize) -> Perm {
    (0..n).map(|i| (n - i) % n).collect()
}

pub fn group(names: &str, rels: &[&[i32]]) -> FPresentation {
    FPresentation::new(
        names.split(' ').map(String::from).collect(),
        rels.iter().map(|r| Word::from_signed(r)),
    )
}

pub fn power(g: i32, n: usize) -> Vec<i32> {
    vec![g; n]
}

pub fn standard_groups() -> Vec<(&'static str, FPresentation, Vec<Perm>)> {
    let mut out = Vec::new();
    for n in [5, 7] {
        out.push(("cyclic", group("a", &[&power(1, n)]), vec![rotation(n)]));
    }
    for n in [3, 4, 6, 12] {
        let p = group("r s", &[&power(1, n), &[2, 2], &[2, 1, 2, 1]]);
        out.push(("dihedral", p, vec![rotation(n), reflection(n)]));
    }
    out.push((
        "Klein four",
        group("a b", &[&[1, 1], &[2, 2], &[1, 2, 1, 2]]),
        vec![
            cycles(4, &[&[1, 2], &[3, 4]]),
            cycles(4, &[&[1, 3], &[2, 4]]),
        ],
    ));
    out.push((
        "quaternion",
        group("i j", &[&power(1, 4), &[1, 1, -2, -2], &[-2, 1, 2, 1]]),
        vec![
            cycles(8, &[&[1, 2, 3, 4], &[5, 6, 7, 8]]),
            cycles(8, &[&[1, 5, 3, 7], &[2, 8, 4, 6]]),
        ],
    ));
    out.push((
        "alternating 4",
        group("a b", &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2]]),
        vec![cycles(4, &[&[1, 2], &[3, 4]]), cycles(4, &[&[1, 2, 3]])],
    ));
    out.push((
        "symmetric 4",
        group("a b", &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2, 1, 2]]),
        vec![cycles(4, &[&[1, 2]]), cycles(4, &[&[2, 3, 4]])],
    ));
    out.push((
        "Z2 x Z4",
        group("a b", &[&[1, 1], &power(2, 4), &[1, 2, -1, -2]]),
        vec![cycles(6, &[&[1, 2]]), cycles(6, &[&[3, 4, 5, 6]])],
    ));
    out.push((
        "Z2 x Z3",
        group("a b", &[&[1, 1], &[2, 2, 2], &[1, 2, -1, -2]]),
        vec![cycles(5, &[&[1, 2]]), cycles(5, &[&[3, 4, 5]])],
    ));
    out.push((
        "trivial",
        group("a b", &[&[1, -2], &[1, 1, -2, -2, -2]]),
        vec![vec![0], vec![0]],
    ));
    out
}

/// Random codes whose ridge cycles close.
pub fn valid_codes(count: usize) -> Vec<PairingScheme> {
    const DIGITS: &[u8] = b"123456789ABCDEF";
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut out = Vec::new();
    while out.len() < count {
        let code: String = (0..6)
            .map(|_| DIGITS[rng.gen_range(0..DIGITS.len())] as char)
            .collect();
        if let Ok(s) = decode_code(&code) {
            if ridge_cycles(&s).is_ok() {
                out.push(s);
            }
        }
    }
    out
}

pub fn coprime_triple(rng: &mut ChaCha8Rng) -> [i64; 3] {
    loop {
        let t: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        if t[0].gcd(&t[1]).gcd(&t[2]) == 1 {
            return t;
        }
    }
}

/// M36 filled along t5 = v1^p v2^-q v3^r and t'5 = k(v1^-p' v2^q' v3^-r')k^-1.
pub fn m36_plan(unprimed: [i64; 3], primed: [i64; 3]) -> VerificationPlan {
    let v = [word("c^-1i^-1eg"), word("a^-1k^-1ci"), word("a^-1k^-1eg")];
    let [p, q, r] = unprimed;
    let [p2, q2, r2] = primed;
    let t5 = v[0].pow(p).concat(&v[1].pow(-q)).concat(&v[2].pow(r));
    let core = v[0].pow(-p2).concat(&v[1].pow(q2)).concat(&v[2].pow(-r2));
    let t5p = word("k").conjugate(&core);
    let mut plan = reference_plan("36");
    plan.set_fiber(FiberSpec {
        lift: "E5".parse().unwrap(),
        word: t5,
    });
    plan.set_fiber(FiberSpec {
        lift: "E5'".parse().unwrap(),
        word: t5p,
    });
    plan
}

/// The determinant whose absolute value decides the family.
pub fn m36_determinant([p, q, r]: [i64; 3], [p2, q2, r2]: [i64; 3]) -> i64 {
    (q + r) * (p2 + r2) - (q2 + r2) * (p + r)
}

/// `U·A·V = D`, `U` and `V` unimodular, `D` diagonal with a nonnegative divisor chain.
pub fn check_smith_normal_form(rows: &[Vec<i64>]) -> Result<(), String> {
    let a = BigMatrix::from_i64(rows);
    let snf = smith_normal_form(&a);
    let diag = snf.d.diagonal();
    let chain = diag
        .windows(2)
        .all(|w| w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
    let checks = [
        (snf.u.mul(&a).mul(&snf.v) == snf.d, "U·A·V != D"),
        (snf.d.is_diagonal(), "D not diagonal"),
        (det(&snf.u).abs().is_one(), "U not unimodular"),
        (det(&snf.v).abs().is_one(), "V not unimodular"),
        (
            diag.iter().all(|x| !x.is_negative()) && chain,
            "bad divisor chain",
        ),
    ];
    match checks.iter().find(|c| !c.0) {
        Some((_, msg)) => Err(format!("{msg} for {rows:?}")),
        None => Ok(()),
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
    (0..r)
        .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
        .collect()
}

/// Coset enumeration with the trivial subgroup finds the order of the permutation group.
pub fn check_enumeration(name: &str, p: &FPresentation, gens: &[Perm]) -> Result<(), String> {
    for r in p.relators() {
        if evaluate(r, gens).iter().enumerate().any(|(i, &x)| i != x) {
            return Err(format!(
                "{name}: relator {} fails on the permutations",
                p.format_word(r)
            ));
        }
    }
    let order = closure_order(gens);
    for strategy in [Strategy::Hlt, Strategy::Felsch] {
        let table = coset_enumerate(
            p,
            &[],
            &EnumOptions {
                strategy,
                ..EnumOptions::default()
            },
        );
        table.validate(p).map_err(|e| format!("{name}: {e:?}"))?;
        if !table.is_complete() || table.len() != order {
            return Err(format!(
                "{name} ({strategy:?}): {} cosets, order {order}",
                table.len()
            ));
        }
    }
    Ok(())
}

/// Every one of the 96 ridges lies in exactly one of the 24 cycles.
pub fn check_ridge_coverage(scheme: &PairingScheme) -> Result<(), String> {
    let cycles = ridge_cycles(scheme).map_err(|e| e.to_string())?;
    let mut count: HashMap<Ridge, usize> = HashMap::new();
    for c in &cycles {
        for &(s, u) in &c.states {
            *count
                .entry(Ridge::new(s, u).ok_or("state is not a ridge")?)
                .or_default() += 1;
        }
    }
    let all = ridges();
    if all.len() == 96 && cycles.len() == 24 && all.iter().all(|r| count.get(r) == Some(&1)) {
        Ok(())
    } else {
        Err(format!("{}: ridges not covered once", scheme.code()))
    }
}

pub fn check_tietze(scheme: &PairingScheme) -> Result<(), String> {
    let p = ridge_cycle_relators(scheme).map_err(|e| e.to_string())?;
    let (before, after) = (
        abelianization(&p),
        abelianization(&tietze_simplify(&p, 10_000)),
    );
    if before == after {
        Ok(())
    } else {
        Err(format!("{}: {before} became {after}", scheme.code()))
    }
}
