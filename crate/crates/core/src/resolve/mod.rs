//! Graded free resolutions by iterated Schreyer syzygies, minimalization by
//! unit-entry elimination, Betti tables, projective dimension, and the
//! dual-cokernel projective dimension bound for almost complete
//! intersections.

mod modules;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::hilbert::HilbertData;
use crate::idealops;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use modules::{schreyer_step, ModElem, ModOrder, ModTerm};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

pub(crate) use modules::{module_contains, module_groebner};

/// A graded free module, described by the degrees of its basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFreeModule {
    pub shifts: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(shifts: Vec<i64>) -> Self {
        GradedFreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
}

/// A map of graded free modules: a target.rank x source.rank matrix of
/// homogeneous polynomials, entry degree = source shift - target shift.
#[derive(Debug, Clone)]
pub struct DifferentialMatrix {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    entries: Vec<Vec<Polynomial>>,
}

impl DifferentialMatrix {
    pub fn new(
        target: GradedFreeModule,
        source: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if entries.len() != target.rank()
            || entries.iter().any(|row| row.len() != source.rank())
        {
            return Err(Error::Invalid("differential has wrong shape".into()));
        }
        for (r, row) in entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let want = source.shifts[c] - target.shifts[r];
                match e.homogeneous_degree() {
                    Some(d) if d as i64 == want => {}
                    _ => {
                        return Err(Error::Invalid(format!(
                            "entry ({r},{c}) is not homogeneous of degree {want}"
                        )))
                    }
                }
            }
        }
        Ok(DifferentialMatrix {
            source,
            target,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r][c]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    /// The dual map: transposed entries, negated shifts.
    pub fn transpose(&self) -> DifferentialMatrix {
        let src = GradedFreeModule::new(self.target.shifts.iter().map(|s| -s).collect());
        let tgt = GradedFreeModule::new(self.source.shifts.iter().map(|s| -s).collect());
        let mut entries = vec![Vec::with_capacity(self.rows()); self.cols()];
        for (r, row) in entries.iter_mut().enumerate() {
            for c in 0..self.target.rank() {
                row.push(self.entries[c][r].clone());
            }
        }
        DifferentialMatrix::new(tgt, src, entries).expect("transpose keeps grading")
    }
}

/// A chain of composable differentials F_0 <- F_1 <- ... <- F_p.
#[derive(Debug, Clone)]
pub struct FreeComplex {
    ring: Arc<Ring>,
    f0: GradedFreeModule,
    diffs: Vec<DifferentialMatrix>,
}

impl FreeComplex {
    pub fn new(
        ring: &Arc<Ring>,
        f0: GradedFreeModule,
        diffs: Vec<DifferentialMatrix>,
    ) -> Result<Self> {
        let mut prev = &f0;
        for d in &diffs {
            if d.target != *prev {
                return Err(Error::Invalid("differentials do not chain".into()));
            }
            prev = &d.source;
        }
        Ok(FreeComplex {
            ring: ring.clone(),
            f0,
            diffs,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Number of differentials; for a minimal resolution of S/I this is
    /// the projective dimension.
    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    pub fn module(&self, i: usize) -> &GradedFreeModule {
        if i == 0 {
            &self.f0
        } else {
            &self.diffs[i - 1].source
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.length()).map(|i| self.module(i).rank()).collect()
    }

    pub fn differential(&self, j: usize) -> &DifferentialMatrix {
        &self.diffs[j - 1]
    }

    pub fn differentials(&self) -> &[DifferentialMatrix] {
        &self.diffs
    }

    /// Flag for the degenerate unit-ideal input: the resolved module is 0.
    pub fn resolves_zero_module(&self) -> bool {
        self.f0.rank() == 0
    }

    /// Exact zero-composition check for every consecutive pair.
    pub fn check_complex(&self) -> Result<()> {
        for j in 0..self.diffs.len().saturating_sub(1) {
            let a = &self.diffs[j];
            let b = &self.diffs[j + 1];
            for r in 0..a.rows() {
                for c in 0..b.cols() {
                    let mut acc = Polynomial::zero(&self.ring);
                    for k in 0..a.cols() {
                        if !a.entries[r][k].is_zero() && !b.entries[k][c].is_zero() {
                            acc = acc
                                .checked_add(&a.entries[r][k].checked_mul(&b.entries[k][c])?)?;
                        }
                    }
                    if !acc.is_zero() {
                        return Err(Error::NotAComplex { j: j + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// No differential entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        self.diffs
            .iter()
            .flat_map(|d| d.entries.iter().flatten())
            .all(|e| e.constant_value().is_none())
    }
}

/// Graded Betti numbers beta_{i,j}; pd is the largest i present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn from_complex(c: &FreeComplex) -> BettiTable {
        let mut entries = BTreeMap::new();
        for i in 0..=c.length() {
            if i > 0 || !c.resolves_zero_module() {
                for &s in &c.module(i).shifts {
                    *entries.entry((i, s)).or_insert(0) += 1;
                }
            }
        }
        BettiTable { entries }
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Total rank at each homological index.
    pub fn ranks(&self) -> Vec<usize> {
        let pd = self.projective_dimension();
        let mut out = vec![0usize; pd + 1];
        for (&(i, _), &b) in &self.entries {
            out[i] += b;
        }
        out
    }

    /// Numerator of the Hilbert series: sum of (-1)^i beta_{i,j} t^j.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let deg = self
            .entries
            .keys()
            .map(|&(_, j)| j)
            .max()
            .unwrap_or(0)
            .max(0) as usize;
        let mut n = vec![0i64; deg + 1];
        for (&(i, j), &b) in &self.entries {
            assert!(j >= 0, "resolution shifts must be nonnegative here");
            let sign = if i % 2 == 0 { 1 } else { -1 };
            n[j as usize] += sign * b as i64;
        }
        while n.last() == Some(&0) {
            n.pop();
        }
        n
    }

    /// Macaulay2-style grid: columns are homological degrees, rows are
    /// internal degree minus homological degree.
    pub fn grid_string(&self) -> String {
        if self.entries.is_empty() {
            return "empty Betti table\n".to_string();
        }
        let pd = self.projective_dimension();
        let rows: Vec<i64> = {
            let r: Vec<i64> = self
                .entries
                .keys()
                .map(|&(i, j)| j - i as i64)
                .collect();
            let lo = *r.iter().min().unwrap();
            let hi = *r.iter().max().unwrap();
            (lo..=hi).collect()
        };
        let totals = self.ranks();
        let cell = |v: Option<usize>| match v {
            Some(x) if x > 0 => x.to_string(),
            _ => ".".to_string(),
        };
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["".to_string()];
        for i in 0..=pd {
            header.push(i.to_string());
        }
        grid.push(header);
        let mut total_row = vec!["total:".to_string()];
        for &t in &totals {
            total_row.push(t.to_string());
        }
        grid.push(total_row);
        for &d in &rows {
            let mut row = vec![format!("{d}:")];
            for i in 0..=pd {
                row.push(cell(self.entries.get(&(i, d + i as i64)).copied()));
            }
            grid.push(row);
        }
        let ncols = pd + 2;
        let widths: Vec<usize> = (0..ncols)
            .map(|c| grid.iter().map(|r| r[c].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for row in &grid {
            for (c, cellv) in row.iter().enumerate() {
                if c > 0 {
                    out.push(' ');
                }
                out.push_str(&" ".repeat(widths[c].saturating_sub(cellv.len())));
                out.push_str(cellv);
            }
            out.push('\n');
        }
        out
    }
}

// ---------------------------------------------------------------------------
// resolution construction

struct WorkComplex {
    /// shifts[k] = degrees of F_k basis elements
    shifts: Vec<Vec<i64>>,
    /// diffs[k] = matrix of F_{k+1} -> F_k
    diffs: Vec<Vec<Vec<Polynomial>>>,
}

fn elem_degree(e: &ModElem, shifts: &[i64]) -> Result<i64> {
    let mut deg = None;
    for t in e {
        let d = t.m.degree() as i64 + shifts[t.comp as usize];
        match deg {
            None => deg = Some(d),
            Some(d0) if d0 == d => {}
            _ => return Err(Error::NonHomogeneous),
        }
    }
    deg.ok_or(Error::ZeroPolynomial)
}

fn elems_to_matrix(
    ring: &Arc<Ring>,
    elems: &[ModElem],
    target_rank: usize,
) -> Vec<Vec<Polynomial>> {
    let mut entries = vec![vec![Polynomial::zero(ring); elems.len()]; target_rank];
    for (c, e) in elems.iter().enumerate() {
        let mut per_comp: BTreeMap<u32, Vec<(u64, Monomial)>> = BTreeMap::new();
        for t in e {
            per_comp.entry(t.comp).or_default().push((t.c, t.m.clone()));
        }
        for (comp, terms) in per_comp {
            entries[comp as usize][c] = Polynomial::from_terms(ring, terms);
        }
    }
    entries
}

/// Non-minimal resolution of F_0 / <columns> by iterated Schreyer steps.
/// `gens` are elements of the free module with the given shifts.
fn raw_resolution(
    ring: &Arc<Ring>,
    f0_shifts: Vec<i64>,
    gens: Vec<ModElem>,
    already_groebner: bool,
) -> Result<WorkComplex> {
    let field = *ring.field();
    let mut work = WorkComplex {
        shifts: vec![f0_shifts.clone()],
        diffs: Vec::new(),
    };
    let mut ord: Arc<ModOrder> = Arc::new(ModOrder::Top(MonomialOrder::Grevlex));
    let mut level: Vec<ModElem> = if already_groebner {
        gens
    } else {
        module_groebner(&gens, &ord, &field, false)?.0
    };
    let cap = ring.nvars() + 3;
    loop {
        if level.is_empty() {
            break;
        }
        let prev_shifts = work.shifts.last().unwrap().clone();
        let shifts: Vec<i64> = level
            .iter()
            .map(|e| elem_degree(e, &prev_shifts))
            .collect::<Result<_>>()?;
        work.diffs
            .push(elems_to_matrix(ring, &level, prev_shifts.len()));
        work.shifts.push(shifts);
        if work.diffs.len() > cap {
            return Err(Error::Invalid(
                "resolution exceeded the expected length bound".into(),
            ));
        }
        let (syz, next_ord) = schreyer_step(&level, &ord, &field)?;
        ord = next_ord;
        level = syz;
    }
    Ok(work)
}

/// Eliminate unit entries in place: row/column reduction on the adjacent
/// differentials, then deletion of the pivot row and column. Deterministic:
/// lowest (level, column, row) first.
fn minimalize(work: &mut WorkComplex, ring: &Arc<Ring>) {
    let field = *ring.field();
    loop {
        let mut pivot: Option<(usize, usize, usize, u64)> = None;
        'scan: for k in 0..work.diffs.len() {
            let d = &work.diffs[k];
            let rows = d.len();
            let cols = if rows == 0 { 0 } else { d[0].len() };
            for c in 0..cols {
                for r in 0..rows {
                    if let Some(u) = d[r][c].constant_value() {
                        pivot = Some((k, r, c, u));
                        break 'scan;
                    }
                }
            }
        }
        let Some((k, r, c, u)) = pivot else { break };
        let u_inv = field.inv(u);

        // clear row r by column operations; mirror on the next differential
        let cols = work.diffs[k][0].len();
        let col_multipliers: Vec<(usize, Polynomial)> = (0..cols)
            .filter(|&c2| c2 != c && !work.diffs[k][r][c2].is_zero())
            .map(|c2| (c2, work.diffs[k][r][c2].scale(u_inv)))
            .collect();
        for (c2, w) in &col_multipliers {
            for r2 in 0..work.diffs[k].len() {
                let sub = w.checked_mul(&work.diffs[k][r2][c].clone()).unwrap();
                work.diffs[k][r2][*c2] =
                    work.diffs[k][r2][*c2].checked_sub(&sub).unwrap();
            }
            if k + 1 < work.diffs.len() {
                let next = &mut work.diffs[k + 1];
                for cc in 0..next[0].len() {
                    let add = w.checked_mul(&next[*c2][cc]).unwrap();
                    next[c][cc] = next[c][cc].checked_add(&add).unwrap();
                }
            }
        }
        // clear column c by row operations; mirror on the previous
        // differential
        let rows = work.diffs[k].len();
        let row_multipliers: Vec<(usize, Polynomial)> = (0..rows)
            .filter(|&r2| r2 != r && !work.diffs[k][r2][c].is_zero())
            .map(|r2| (r2, work.diffs[k][r2][c].scale(u_inv)))
            .collect();
        for (r2, w) in &row_multipliers {
            for c2 in 0..cols {
                let sub = w.checked_mul(&work.diffs[k][r][c2].clone()).unwrap();
                work.diffs[k][*r2][c2] =
                    work.diffs[k][*r2][c2].checked_sub(&sub).unwrap();
            }
            if k > 0 {
                let prev = &mut work.diffs[k - 1];
                for rr in 0..prev.len() {
                    let add = w.checked_mul(&prev[rr][*r2]).unwrap();
                    prev[rr][r] = prev[rr][r].checked_add(&add).unwrap();
                }
            }
        }

        // the cancelled basis vectors now carry only zeros next door
        if k + 1 < work.diffs.len() {
            debug_assert!(work.diffs[k + 1][c].iter().all(|e| e.is_zero()));
        }
        if k > 0 {
            debug_assert!(work.diffs[k - 1].iter().all(|row| row[r].is_zero()));
        }

        // delete row r and column c of diffs[k]
        work.diffs[k].remove(r);
        for row in work.diffs[k].iter_mut() {
            row.remove(c);
        }
        work.shifts[k].remove(r);
        work.shifts[k + 1].remove(c);
        if k + 1 < work.diffs.len() {
            work.diffs[k + 1].remove(c);
        }
        if k > 0 {
            for row in work.diffs[k - 1].iter_mut() {
                row.remove(r);
            }
        }
    }
    // trim trailing zero modules
    while work
        .shifts
        .last()
        .map(|s| s.is_empty())
        .unwrap_or(false)
        && work.shifts.len() > 1
    {
        work.shifts.pop();
        work.diffs.pop();
    }
}

fn work_to_complex(ring: &Arc<Ring>, work: WorkComplex) -> Result<FreeComplex> {
    let f0 = GradedFreeModule::new(work.shifts[0].clone());
    let mut diffs = Vec::with_capacity(work.diffs.len());
    for (k, entries) in work.diffs.into_iter().enumerate() {
        let target = GradedFreeModule::new(work.shifts[k].clone());
        let source = GradedFreeModule::new(work.shifts[k + 1].clone());
        diffs.push(DifferentialMatrix::new(target, source, entries)?);
    }
    FreeComplex::new(ring, f0, diffs)
}

/// Minimal free resolution of the quotient of a free module (with the given
/// shifts) by the submodule spanned by `columns`.
pub fn resolve_cokernel(
    ring: &Arc<Ring>,
    f0_shifts: Vec<i64>,
    columns: Vec<Vec<Polynomial>>,
) -> Result<FreeComplex> {
    let gens: Vec<ModElem> = columns
        .iter()
        .map(|col| {
            if col.len() != f0_shifts.len() {
                return Err(Error::Invalid("column length mismatch".into()));
            }
            let mut e: ModElem = Vec::new();
            for (comp, p) in col.iter().enumerate() {
                for (c, m) in p.terms() {
                    e.push(ModTerm {
                        c: *c,
                        comp: comp as u32,
                        m: m.clone(),
                    });
                }
            }
            Ok(e)
        })
        .collect::<Result<_>>()?;
    let gens: Vec<ModElem> = gens
        .into_iter()
        .map(|e| modules::normalize(e, &ModOrder::Top(MonomialOrder::Grevlex), ring.field()))
        .collect();
    let mut work = raw_resolution(ring, f0_shifts, gens, false)?;
    minimalize(&mut work, ring);
    work_to_complex(ring, work)
}

/// Minimal graded free resolution of S/I. The unit ideal resolves the zero
/// module: an empty complex flagged by `resolves_zero_module`.
pub fn free_resolution(i: &Ideal) -> Result<FreeComplex> {
    let ring = i.ring();
    if i.is_zero_ideal() {
        return FreeComplex::new(ring, GradedFreeModule::new(vec![0]), Vec::new());
    }
    let gb = i.gb()?;
    if gb.is_unit() {
        return FreeComplex::new(ring, GradedFreeModule::new(Vec::new()), Vec::new());
    }
    // level 1: the reduced basis, largest leading monomials first
    let mut gens: Vec<ModElem> = gb
        .generators()
        .iter()
        .rev()
        .map(|g| {
            g.terms()
                .iter()
                .map(|(c, m)| ModTerm {
                    c: *c,
                    comp: 0,
                    m: m.clone(),
                })
                .collect()
        })
        .collect();
    gens.retain(|e: &ModElem| !e.is_empty());
    let mut work = raw_resolution(ring, vec![0], gens, true)?;
    minimalize(&mut work, ring);
    work_to_complex(ring, work)
}

/// Length of the minimal free resolution of S/I.
pub fn projective_dimension(i: &Ideal) -> Result<usize> {
    Ok(free_resolution(i)?.length())
}

/// Graded Betti numbers of the minimal resolution of S/I.
pub fn betti_table(i: &Ideal) -> Result<BettiTable> {
    Ok(BettiTable::from_complex(&free_resolution(i)?))
}

/// Hilbert data of S/I from the minimal resolution: the numerator is the
/// Betti alternating sum. This is the resolution-side counterpart of
/// `hilbert::hilbert_from_initial`; the two must agree.
pub fn hilbert_from_resolution(i: &Ideal) -> Result<HilbertData> {
    let res = free_resolution(i)?;
    let betti = BettiTable::from_complex(&res);
    let numerator = betti.hilbert_numerator();
    let codim = idealops::height(i)?;
    HilbertData::from_parts(numerator, i.ring().nvars(), codim)
}

/// Columns generating the full syzygy module of the input matrix columns,
/// obtained from S-pair reduction traces of a module Groebner basis.
pub fn syzygies_of_matrix(m: &DifferentialMatrix) -> Result<DifferentialMatrix> {
    let ring = m
        .entries
        .iter()
        .flatten()
        .map(|p| p.ring().clone())
        .next()
        .ok_or_else(|| Error::Invalid("empty matrix".into()))?;
    let field = *ring.field();
    let ord = Arc::new(ModOrder::Top(MonomialOrder::Grevlex));
    let mut cols: Vec<ModElem> = Vec::new();
    for c in 0..m.cols() {
        let mut e: ModElem = Vec::new();
        for r in 0..m.rows() {
            for (cf, mm) in m.entries[r][c].terms() {
                e.push(ModTerm {
                    c: *cf,
                    comp: r as u32,
                    m: mm.clone(),
                });
            }
        }
        cols.push(modules::normalize(e, &ord, &field));
    }
    let (_, syz) = module_groebner(&cols, &ord, &field, true)?;
    let mut syz = syz.unwrap();
    for s in syz.iter_mut() {
        *s = modules::normalize(std::mem::take(s), &ord, &field);
    }
    syz.retain(|s| !s.is_empty());
    // minimal generating set: ascending degree, drop members of the
    // submodule already spanned
    syz.sort_by(|a, b| {
        let da = elem_degree(a, &m.source.shifts).unwrap_or(i64::MAX);
        let db = elem_degree(b, &m.source.shifts).unwrap_or(i64::MAX);
        da.cmp(&db)
            .then_with(|| ord.cmp((&a[0].m, a[0].comp), (&b[0].m, b[0].comp)))
    });
    let mut kept: Vec<ModElem> = Vec::new();
    let mut kept_gb: Vec<ModElem> = Vec::new();
    for e in syz {
        if kept.is_empty() || !module_contains(&kept_gb, &e, &ord, &field) {
            kept.push(e);
            kept_gb = module_groebner(&kept, &ord, &field, false)?.0;
        }
    }
    let syz = kept;
    let entries = elems_to_matrix(&ring, &syz, m.cols());
    let shifts: Vec<i64> = syz
        .iter()
        .map(|e| elem_degree(e, &m.source.shifts))
        .collect::<Result<_>>()?;
    DifferentialMatrix::new(m.source.clone(), GradedFreeModule::new(shifts), entries)
}

/// Syzygies of a row of ring elements (a rank-one presentation).
pub fn syzygies(gens: &[Polynomial]) -> Result<DifferentialMatrix> {
    let _ring = gens
        .first()
        .map(|g| g.ring().clone())
        .ok_or_else(|| Error::Invalid("no generators".into()))?;
    let shifts: Vec<i64> = gens
        .iter()
        .map(|g| {
            g.homogeneous_degree()
                .map(|d| d as i64)
                .ok_or(Error::NonHomogeneous)
        })
        .collect::<Result<_>>()?;
    let row = DifferentialMatrix::new(
        GradedFreeModule::new(vec![0]),
        GradedFreeModule::new(shifts),
        vec![gens.to_vec()],
    )?;
    syzygies_of_matrix(&row)
}

/// For an almost complete intersection I of height h: resolve the unmixed
/// part, transpose the (h+1)-st differential, resolve its cokernel, and
/// return max(h+2, pd Coker). The returned value bounds pd(S/I) from
/// above.
pub fn dual_coker_pd_bound(i: &Ideal, rng: &mut ChaCha8Rng) -> Result<usize> {
    let h = idealops::height(i)?;
    let res_i = free_resolution(i)?;
    let mingens = if res_i.length() >= 1 {
        res_i.module(1).rank()
    } else {
        0
    };
    if mingens != h + 1 || idealops::find_regular_sequence(i, h, rng).is_err() {
        return Err(Error::NotAci);
    }
    let iun = idealops::unmixed_part(i, rng)?;
    let res = free_resolution(&iun)?;
    if res.length() <= h {
        return Ok(h + 2);
    }
    let dual = res.differential(h + 1).transpose();
    let columns: Vec<Vec<Polynomial>> = (0..dual.cols())
        .map(|c| (0..dual.rows()).map(|r| dual.entry(r, c).clone()).collect())
        .collect();
    let coker = resolve_cokernel(&i.ring().clone(), dual.target.shifts.clone(), columns)?;
    Ok((h + 2).max(coker.length()))
}
