//! Todd–Coxeter coset enumeration.
//!
//! Columns of the table are letters: column `2g` is generator `g`, column `2g+1` its inverse.
//! An overflowing enumeration is an ordinary outcome, reported as [`EnumStatus::Overflow`].

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{FPresentation, Letter, Word};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Relator-based (Haselgrove–Leech–Trotter) with deduction stacking.
    #[default]
    Hlt,
    Felsch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumOptions {
    pub strategy: Strategy,
    /// Upper bound on allocated table rows, live or dead.
    pub max_cosets: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            strategy: Strategy::Hlt,
            max_cosets: DEFAULT_MAX_COSETS,
        }
    }
}

impl EnumOptions {
    pub fn with_limit(max_cosets: usize) -> Self {
        EnumOptions {
            max_cosets,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum EnumStatus {
    Complete,
    Overflow { limit: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumStats {
    /// Total cosets ever defined.
    pub defined: usize,
    /// Largest number of rows in use at one time.
    pub max_active: usize,
    pub coincidences: usize,
}

/// A coset table. When complete, rows are standardized so that coset 0 is the subgroup
/// and cosets are numbered in order of first appearance in a row-major scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    rows: usize,
    /// `rows * 2 * ngens` entries; `NONE` marks an undefined entry of an overflowed table.
    data: Vec<u32>,
    pub status: EnumStatus,
    pub stats: EnumStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("coset enumeration overflowed at {limit} cosets (undecided)")]
pub struct Overflow {
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("entry ({coset}, column {column}) is undefined")]
    Undefined { coset: usize, column: usize },
    #[error("column {column} is not inverse to its partner at coset {coset}")]
    NotInverse { coset: usize, column: usize },
    #[error("relator {relator} does not close at coset {coset}")]
    RelatorOpen { relator: usize, coset: usize },
}

impl CosetTable {
    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn len(&self) -> usize {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn is_complete(&self) -> bool {
        self.status == EnumStatus::Complete
    }

    /// Image of `coset` under a letter, if defined.
    pub fn act(&self, coset: usize, l: Letter) -> Option<usize> {
        let v = self.data[coset * 2 * self.ngens + l.column()];
        (v != NONE).then_some(v as usize)
    }

    /// Image of `coset` under a word (right action), if every step is defined.
    pub fn act_word(&self, coset: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(coset, |c, &l| self.act(c, l))
    }

    /// Permutation of the cosets induced by generator `g`.
    pub fn permutation(&self, g: usize) -> Vec<usize> {
        (0..self.rows)
            .map(|c| self.act(c, Letter::new(g, false)).expect("complete table"))
            .collect()
    }

    /// Checks that the table is a permutation representation in which every relator closes.
    pub fn validate(&self, p: &FPresentation) -> Result<(), TableError> {
        for c in 0..self.rows {
            for col in 0..2 * self.ngens {
                let l = Letter::from_column(col);
                let d = self.act(c, l).ok_or(TableError::Undefined {
                    coset: c,
                    column: col,
                })?;
                if self.act(d, l.inverse()) != Some(c) {
                    return Err(TableError::NotInverse {
                        coset: c,
                        column: col,
                    });
                }
            }
            for (i, r) in p.relators().iter().enumerate() {
                if self.act_word(c, r) != Some(c) {
                    return Err(TableError::RelatorOpen {
                        relator: i,
                        coset: c,
                    });
                }
            }
        }
        Ok(())
    }

    /// Flat audit format: a header, then one line per coset listing the images under
    /// each generator and its inverse (`-` for undefined).
    pub fn to_text(&self, names: &[String]) -> String {
        let mut out = String::new();
        let status = match self.status {
            EnumStatus::Complete => "complete".to_string(),
            EnumStatus::Overflow { limit } => format!("overflow {limit}"),
        };
        let _ = writeln!(out, "# cosets {} {}", self.rows, status);
        let cols: Vec<String> = (0..2 * self.ngens)
            .map(|col| {
                let l = Letter::from_column(col);
                let n = &names[l.gen()];
                if l.is_inverse() {
                    format!("{n}^-1")
                } else {
                    n.clone()
                }
            })
            .collect();
        let _ = writeln!(out, "# coset {}", cols.join(" "));
        for c in 0..self.rows {
            let _ = write!(out, "{c}");
            for col in 0..2 * self.ngens {
                match self.act(c, Letter::from_column(col)) {
                    Some(d) => {
                        let _ = write!(out, " {d}");
                    }
                    None => out.push_str(" -"),
                }
            }
            out.push('\n');
        }
        out
    }
}

struct Enumerator {
    ncols: usize,
    /// Row-major action table.
    table: Vec<u32>,
    /// Forwarding pointers: `parent[c] == c` exactly when `c` is live.
    parent: Vec<u32>,
    live: usize,
    max_rows: usize,
    relators: Vec<Vec<usize>>,
    /// Cyclic conjugates of relators and their inverses, by first column.
    conjugates: Vec<Vec<Vec<usize>>>,
    deductions: Vec<(u32, usize)>,
    /// HLT may drop deductions (every coset gets scanned anyway); Felsch may not.
    deduction_cap: usize,
    stats: EnumStats,
    overflowed: bool,
}

#[inline]
fn inv(col: usize) -> usize {
    col ^ 1
}

impl Enumerator {
    fn new(p: &FPresentation, opts: &EnumOptions) -> Self {
        let ncols = 2 * p.ngens();
        let relators: Vec<Vec<usize>> = p
            .relators()
            .iter()
            .map(|r| r.letters().iter().map(|l| l.column()).collect())
            .collect();
        let mut conjugates = vec![Vec::new(); ncols];
        for r in &relators {
            let rinv: Vec<usize> = r.iter().rev().map(|&c| inv(c)).collect();
            for w in [r, &rinv] {
                for k in 0..w.len() {
                    let mut rot = w.clone();
                    rot.rotate_left(k);
                    if !conjugates[rot[0]].contains(&rot) {
                        conjugates[rot[0]].push(rot);
                    }
                }
            }
        }
        let mut e = Enumerator {
            ncols,
            table: Vec::with_capacity(ncols * 1024),
            parent: Vec::with_capacity(1024),
            live: 0,
            max_rows: opts.max_cosets.max(1),
            relators,
            conjugates,
            deductions: Vec::new(),
            deduction_cap: if opts.strategy == Strategy::Felsch {
                usize::MAX
            } else {
                4096
            },
            stats: EnumStats::default(),
            overflowed: false,
        };
        e.new_row();
        e
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.ncols + col]
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, v: u32) {
        self.table[c * self.ncols + col] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn new_row(&mut self) -> Option<usize> {
        if self.rows() >= self.max_rows {
            self.overflowed = true;
            return None;
        }
        let n = self.rows();
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.parent.push(n as u32);
        self.live += 1;
        self.stats.defined += 1;
        self.stats.max_active = self.stats.max_active.max(self.rows());
        Some(n)
    }

    fn define(&mut self, c: usize, col: usize) -> bool {
        let Some(n) = self.new_row() else {
            return false;
        };
        self.set(c, col, n as u32);
        self.set(n, inv(col), c as u32);
        self.push_deduction(c, col);
        true
    }

    fn push_deduction(&mut self, c: usize, col: usize) {
        if self.deductions.len() < self.deduction_cap {
            self.deductions.push((c as u32, col));
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep as u32;
        self.live -= 1;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.stats.coincidences += 1;
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for col in 0..self.ncols {
                let f = self.get(e, col);
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                if self.get(f, inv(col)) == e as u32 {
                    self.set(f, inv(col), NONE);
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, col);
                if ex != NONE {
                    self.merge(f1, ex as usize, &mut queue);
                } else {
                    let fy = self.get(f1, inv(col));
                    if fy != NONE {
                        self.merge(e1, fy as usize, &mut queue);
                    } else {
                        self.set(e1, col, f1 as u32);
                        self.set(f1, inv(col), e1 as u32);
                        self.push_deduction(e1, col);
                    }
                }
            }
        }
    }

    /// Scans `w` at `a`, defining new cosets to complete it when `fill` is set.
    /// Returns false on overflow.
    fn scan(&mut self, a: usize, w: &[usize], fill: bool) -> bool {
        if w.is_empty() {
            return true;
        }
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                let next = self.get(f, w[i]);
                if next == NONE {
                    break;
                }
                f = next as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i as isize {
                let next = self.get(b, inv(w[j as usize]));
                if next == NONE {
                    break;
                }
                b = next as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return true;
            }
            if j == i as isize {
                self.set(f, w[i], b as u32);
                self.set(b, inv(w[i]), f as u32);
                self.push_deduction(f, w[i]);
                return true;
            }
            if !fill {
                return true;
            }
            if !self.define(f, w[i]) {
                return false;
            }
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, col)) = self.deductions.pop() {
            let c = c as usize;
            if !self.is_live(c) {
                continue;
            }
            for k in 0..self.conjugates[col].len() {
                let w = std::mem::take(&mut self.conjugates[col][k]);
                self.scan(c, &w, false);
                self.conjugates[col][k] = w;
                if !self.is_live(c) {
                    break;
                }
            }
            let c = self.rep(c);
            let d = self.get(c, col);
            if d == NONE {
                continue;
            }
            let d = d as usize;
            let icol = inv(col);
            for k in 0..self.conjugates[icol].len() {
                let w = std::mem::take(&mut self.conjugates[icol][k]);
                self.scan(d, &w, false);
                self.conjugates[icol][k] = w;
                if !self.is_live(d) {
                    break;
                }
            }
        }
    }

    /// Removes dead rows and renumbers; returns the new index of `cursor`.
    fn compact(&mut self, cursor: usize) -> usize {
        let rows = self.rows();
        let mut map = vec![NONE; rows];
        let mut n = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.parent[c] as usize == c {
                *slot = n;
                n += 1;
            }
        }
        let new_cursor = (0..cursor.min(rows)).filter(|&c| map[c] != NONE).count();
        let mut table = Vec::with_capacity(n as usize * self.ncols);
        for c in 0..rows {
            if map[c] == NONE {
                continue;
            }
            for col in 0..self.ncols {
                let v = self.get(c, col);
                table.push(if v == NONE { NONE } else { map[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..n).collect();
        self.deductions.retain(|(c, _)| map[*c as usize] != NONE);
        for d in &mut self.deductions {
            d.0 = map[d.0 as usize];
        }
        new_cursor
    }

    fn maybe_compact(&mut self, cursor: usize) -> usize {
        let rows = self.rows();
        if rows - self.live > 0 && rows * 4 >= self.max_rows * 3 && self.live * 4 < rows * 3 {
            self.compact(cursor)
        } else {
            cursor
        }
    }

    fn fill_subgroup(&mut self, subgens: &[Vec<usize>]) -> bool {
        for w in subgens {
            if !self.scan(0, w, true) {
                return false;
            }
            self.process_deductions();
        }
        true
    }

    fn run_hlt(&mut self, subgens: &[Vec<usize>]) {
        if !self.fill_subgroup(subgens) {
            return;
        }
        let mut a = 0;
        while a < self.rows() {
            a = self.maybe_compact(a);
            if a >= self.rows() {
                break;
            }
            if self.is_live(a) {
                for r in 0..self.relators.len() {
                    let w = std::mem::take(&mut self.relators[r]);
                    let ok = self.scan(a, &w, true);
                    self.relators[r] = w;
                    if !ok {
                        return;
                    }
                    self.process_deductions();
                    if !self.is_live(a) {
                        break;
                    }
                }
                if self.is_live(a) {
                    for col in 0..self.ncols {
                        if self.get(a, col) == NONE && !self.define(a, col) {
                            return;
                        }
                    }
                }
            }
            a += 1;
        }
    }

    fn run_felsch(&mut self, subgens: &[Vec<usize>]) {
        if !self.fill_subgroup(subgens) {
            return;
        }
        self.process_deductions();
        let mut a = 0;
        loop {
            a = self.maybe_compact(a);
            while a < self.rows()
                && (!self.is_live(a) || (0..self.ncols).all(|c| self.get(a, c) != NONE))
            {
                a += 1;
            }
            if a >= self.rows() {
                return;
            }
            let col = (0..self.ncols)
                .find(|&c| self.get(a, c) == NONE)
                .expect("incomplete row");
            if !self.define(a, col) {
                return;
            }
            self.process_deductions();
        }
    }

    fn finish(mut self, ngens: usize) -> CosetTable {
        let status = if self.overflowed {
            EnumStatus::Overflow {
                limit: self.max_rows,
            }
        } else {
            EnumStatus::Complete
        };
        self.compact(0);
        let rows = self.rows();
        let data = if status == EnumStatus::Complete {
            standardize(&self.table, rows, self.ncols)
        } else {
            self.table
        };
        CosetTable {
            ngens,
            rows,
            data,
            status,
            stats: self.stats,
        }
    }
}

/// Renumbers a complete table so cosets appear in order of first occurrence in a row-major scan.
fn standardize(table: &[u32], rows: usize, ncols: usize) -> Vec<u32> {
    let mut order = vec![0usize];
    let mut map = vec![NONE; rows];
    map[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for col in 0..ncols {
            let d = table[c * ncols + col] as usize;
            if map[d] == NONE {
                map[d] = order.len() as u32;
                order.push(d);
            }
        }
        i += 1;
    }
    let mut out = Vec::with_capacity(rows * ncols);
    for &c in &order {
        out.extend(
            table[c * ncols..(c + 1) * ncols]
                .iter()
                .map(|&d| map[d as usize]),
        );
    }
    out
}

/// Enumerates the cosets of `<subgens>` in the group presented by `p`.
pub fn coset_enumerate(p: &FPresentation, subgens: &[Word], opts: &EnumOptions) -> CosetTable {
    let mut e = Enumerator::new(p, opts);
    let subgens: Vec<Vec<usize>> = subgens
        .iter()
        .map(|w| {
            w.free_reduce()
                .letters()
                .iter()
                .map(|l| l.column())
                .collect()
        })
        .collect();
    match opts.strategy {
        Strategy::Hlt => e.run_hlt(&subgens),
        Strategy::Felsch => e.run_felsch(&subgens),
    }
    e.finish(p.ngens())
}

/// Order of the group presented by `p`, or overflow.
pub fn order_of_quotient(p: &FPresentation, opts: &EnumOptions) -> Result<usize, Overflow> {
    let t = coset_enumerate(p, &[], opts);
    match t.status {
        EnumStatus::Complete => Ok(t.len()),
        EnumStatus::Overflow { limit } => Err(Overflow { limit }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(names: &str, rels: &[&str]) -> FPresentation {
        let names: Vec<String> = names.chars().map(|c| c.to_string()).collect();
        let rels = rels
            .iter()
            .map(|r| Word::parse(r, &names).unwrap())
            .collect::<Vec<_>>();
        FPresentation::new(names, rels)
    }

    fn both(p: &FPresentation, sub: &[Word]) -> (CosetTable, CosetTable) {
        let hlt = coset_enumerate(p, sub, &EnumOptions::default());
        let felsch = coset_enumerate(
            p,
            sub,
            &EnumOptions {
                strategy: Strategy::Felsch,
                ..EnumOptions::default()
            },
        );
        (hlt, felsch)
    }

    #[test]
    fn cyclic() {
        let p = pres("a", &["a^3"]);
        let (h, f) = both(&p, &[]);
        assert_eq!((h.len(), f.len()), (3, 3));
        h.validate(&p).unwrap();
        assert_eq!(
            h,
            CosetTable {
                stats: h.stats,
                ..f.clone()
            }
        );
    }

    #[test]
    fn subgroup_index() {
        let p = pres("cg", &["c^2", "cgc^-1g^-1"]);
        let (h, f) = both(&p, &[Word::gen(1)]);
        assert_eq!((h.len(), f.len()), (2, 2));
        h.validate(&p).unwrap();
        f.validate(&p).unwrap();
    }

    #[test]
    fn free_group_overflows() {
        let p = pres("a", &[]);
        for strategy in [Strategy::Hlt, Strategy::Felsch] {
            let r = order_of_quotient(
                &p,
                &EnumOptions {
                    strategy,
                    max_cosets: 500,
                },
            );
            assert_eq!(r, Err(Overflow { limit: 500 }));
        }
    }

    #[test]
    fn coxeter_groups() {
        // S4 as the Coxeter group A3, and a (2,3,5) triangle group of order 120
        let s4 = pres("abc", &["a^2", "b^2", "c^2", "(ab)^3", "(bc)^3", "(ac)^2"]);
        assert_eq!(order_of_quotient(&s4, &EnumOptions::default()), Ok(24));
        let h3 = pres("abc", &["a^2", "b^2", "c^2", "(ab)^5", "(bc)^3", "(ac)^2"]);
        let (h, f) = both(&h3, &[]);
        assert_eq!((h.len(), f.len()), (120, 120));
        h.validate(&h3).unwrap();
    }

    #[test]
    fn trivial_by_coincidence() {
        let p = pres("ab", &["aba^-1b^-2", "bab^-1a^-2"]);
        assert_eq!(order_of_quotient(&p, &EnumOptions::default()), Ok(1));
    }

    #[test]
    fn text_export() {
        let p = pres("a", &["a^2"]);
        let t = coset_enumerate(&p, &[], &EnumOptions::default());
        assert_eq!(
            t.to_text(p.names()),
            "# cosets 2 complete\n# coset a a^-1\n0 1 1\n1 0 0\n"
        );
    }
}
