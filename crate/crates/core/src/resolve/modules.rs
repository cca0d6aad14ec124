//! Elements of graded free modules and the module-level Groebner machinery
//! behind syzygy computation: term-over-position and Schreyer orders, module
//! normal forms with cofactor tracing, completion, and the pruned S-pair
//! syzygy step.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::HOMOGENEOUS_DEGREE_CAP;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use std::cmp::Ordering;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ModTerm {
    pub c: u64,
    pub comp: u32,
    pub m: Monomial,
}

/// Sorted strictly descending under the ambient module order.
pub(crate) type ModElem = Vec<ModTerm>;

/// Module monomial orders. Position ties always prefer the smaller
/// component.
#[derive(Debug)]
pub(crate) enum ModOrder {
    /// Ring order on the monomial, ties by component.
    Top(MonomialOrder),
    /// Induced from the leading terms of the previous level's generators:
    /// m e_i >= m' e_j iff m * lead_i >= m' * lead_j one level down.
    Schreyer {
        leads: Vec<(Monomial, u32)>,
        inner: Arc<ModOrder>,
    },
}

impl ModOrder {
    pub(crate) fn cmp(&self, a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
        match self {
            ModOrder::Top(ord) => ord
                .cmp(a.0, b.0)
                .then_with(|| b.1.cmp(&a.1)),
            ModOrder::Schreyer { leads, inner } => {
                let (la, ca) = &leads[a.1 as usize];
                let (lb, cb) = &leads[b.1 as usize];
                inner
                    .cmp((&a.0.mul(la), *ca), (&b.0.mul(lb), *cb))
                    .then_with(|| b.1.cmp(&a.1))
            }
        }
    }

    fn cmp_terms(&self, a: &ModTerm, b: &ModTerm) -> Ordering {
        self.cmp((&a.m, a.comp), (&b.m, b.comp))
    }
}

pub(crate) fn normalize(mut elem: ModElem, ord: &ModOrder, field: &PrimeField) -> ModElem {
    elem.retain(|t| t.c != 0);
    elem.sort_by(|a, b| ord.cmp_terms(b, a));
    let mut out: ModElem = Vec::with_capacity(elem.len());
    for t in elem {
        match out.last_mut() {
            Some(last) if last.comp == t.comp && last.m == t.m => {
                last.c = field.add(last.c, t.c);
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| t.c != 0);
    out
}

/// rem -= c * m * g; both sides sorted under `ord`.
fn sub_scaled(rem: &mut ModElem, c: u64, m: &Monomial, g: &ModElem, ord: &ModOrder, p: u64) {
    let mut out: ModElem = Vec::with_capacity(rem.len() + g.len());
    let mut i = 0usize;
    let mut j = 0usize;
    while i < rem.len() && j < g.len() {
        let gm = g[j].m.mul(m);
        match ord.cmp((&rem[i].m, rem[i].comp), (&gm, g[j].comp)) {
            Ordering::Greater => {
                out.push(rem[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let gc = (p - c * g[j].c % p) % p;
                if gc != 0 {
                    out.push(ModTerm {
                        c: gc,
                        comp: g[j].comp,
                        m: gm,
                    });
                }
                j += 1;
            }
            Ordering::Equal => {
                let nc = (rem[i].c + p - c * g[j].c % p) % p;
                if nc != 0 {
                    out.push(ModTerm {
                        c: nc,
                        comp: rem[i].comp,
                        m: gm,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&rem[i..]);
    while j < g.len() {
        let gc = (p - c * g[j].c % p) % p;
        if gc != 0 {
            out.push(ModTerm {
                c: gc,
                comp: g[j].comp,
                m: g[j].m.mul(m),
            });
        }
        j += 1;
    }
    *rem = out;
}

pub(crate) fn add_scaled(
    acc: &mut ModElem,
    c: u64,
    m: &Monomial,
    g: &ModElem,
    ord: &ModOrder,
    field: &PrimeField,
) {
    let p = field.modulus();
    sub_scaled(acc, field.neg(c), m, g, ord, p);
}

/// One recorded reduction step: subtracted c * m * basis[idx].
pub(crate) type Trace = Vec<(u64, Monomial, usize)>;

/// Full normal form against monic reducers; first divisor in basis order
/// wins. Records the standard expression when `trace` is given.
fn reduce_full(
    mut rem: ModElem,
    basis: &[ModElem],
    leads: &[(Monomial, u32)],
    ord: &ModOrder,
    p: u64,
    mut trace: Option<&mut Trace>,
) -> ModElem {
    let mut out: ModElem = Vec::new();
    'outer: while let Some(t) = rem.first().cloned() {
        for (k, (lm, lc)) in leads.iter().enumerate() {
            if *lc == t.comp && lm.divides(&t.m) {
                let q = lm.div(&t.m);
                sub_scaled(&mut rem, t.c, &q, &basis[k], ord, p);
                if let Some(tr) = trace.as_deref_mut() {
                    tr.push((t.c, q, k));
                }
                continue 'outer;
            }
        }
        out.push(t);
        rem.remove(0);
    }
    out
}

fn make_monic(t: &mut ModElem, field: &PrimeField) -> u64 {
    let lc = t[0].c;
    if lc != 1 {
        let inv = field.inv(lc);
        for term in t.iter_mut() {
            term.c = field.mul(term.c, inv);
        }
    }
    lc
}

fn lead_of(e: &ModElem) -> (Monomial, u32) {
    (e[0].m.clone(), e[0].comp)
}

fn check_cap(e: &ModElem) -> Result<()> {
    let d = e.iter().map(|t| t.m.degree()).max().unwrap_or(0);
    if d > HOMOGENEOUS_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded {
            cap: HOMOGENEOUS_DEGREE_CAP as u32,
        });
    }
    Ok(())
}

/// The pruned S-pair set: for each generator j, one witness pair (j, k) per
/// divisibility-minimal lcm-quotient among later same-component partners.
/// These pairs' syzygies form a Groebner basis of the syzygy module under
/// the induced Schreyer order.
fn pruned_pairs(leads: &[(Monomial, u32)]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for j in 0..leads.len() {
        let (nj, cj) = &leads[j];
        // candidate quotients lcm(n_j, n_k)/n_j for k > j in the component
        let mut cands: Vec<(Monomial, usize)> = Vec::new();
        for (k, (nk, ck)) in leads.iter().enumerate().skip(j + 1) {
            if ck == cj {
                cands.push((nj.div(&nj.lcm(nk)), k));
            }
        }
        cands.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| MonomialOrder::Grevlex.cmp(&a.0, &b.0))
                .then_with(|| a.1.cmp(&b.1))
        });
        let mut kept: Vec<(Monomial, usize)> = Vec::new();
        for (q, k) in cands {
            if !kept.iter().any(|(kq, _)| kq.divides(&q)) {
                kept.push((q, k));
            }
        }
        pairs.extend(kept.into_iter().map(|(_, k)| (j, k)));
    }
    pairs
}

/// One Schreyer step: `gens` is a monic Groebner basis under `ord`; returns
/// the syzygies of the pruned pairs, sorted descending under the induced
/// order, together with that order.
pub(crate) fn schreyer_step(
    gens: &[ModElem],
    ord: &Arc<ModOrder>,
    field: &PrimeField,
) -> Result<(Vec<ModElem>, Arc<ModOrder>)> {
    let p = field.modulus();
    let leads: Vec<(Monomial, u32)> = gens.iter().map(lead_of).collect();
    let next_ord = Arc::new(ModOrder::Schreyer {
        leads: leads.clone(),
        inner: ord.clone(),
    });
    let mut syzygies: Vec<ModElem> = Vec::new();
    for (i, j) in pruned_pairs(&leads) {
        let lcm = leads[i].0.lcm(&leads[j].0);
        let ui = leads[i].0.div(&lcm);
        let uj = leads[j].0.div(&lcm);
        let mut s: ModElem = gens[i]
            .iter()
            .map(|t| ModTerm {
                c: t.c,
                comp: t.comp,
                m: t.m.mul(&ui),
            })
            .collect();
        check_cap(&s)?;
        sub_scaled(&mut s, 1, &uj, &gens[j], ord, p);
        let mut trace: Trace = Vec::new();
        let rem = reduce_full(s, gens, &leads, ord, p, Some(&mut trace));
        if !rem.is_empty() {
            return Err(Error::Invalid(
                "S-pair failed to reduce to zero against a Groebner basis".into(),
            ));
        }
        // tau = ui e_i - uj e_j - sum(trace)
        let mut tau: ModElem = vec![
            ModTerm {
                c: 1,
                comp: i as u32,
                m: ui.clone(),
            },
            ModTerm {
                c: field.neg(1),
                comp: j as u32,
                m: uj.clone(),
            },
        ];
        tau = normalize(tau, &next_ord, field);
        for (c, m, k) in trace {
            let unit: ModElem = vec![ModTerm {
                c: 1,
                comp: k as u32,
                m: Monomial::one(m.nvars()),
            }];
            sub_scaled(&mut tau, c, &m, &unit, &next_ord, p);
        }
        debug_assert_eq!(tau[0].comp, i as u32);
        debug_assert_eq!(tau[0].m, ui);
        syzygies.push(tau);
    }
    // deterministic: descending under the induced order
    syzygies.sort_by(|a, b| next_ord.cmp_terms(&b[0], &a[0]));
    Ok((syzygies, next_ord))
}

/// Buchberger completion for submodules of free modules. No coprime
/// criterion (unsound for modules); chain criterion applies. Returns the
/// reduced basis, and — when `track` — a generating set of the syzygies of
/// the ORIGINAL inputs obtained from pair reductions mapped through
/// cofactors.
pub(crate) fn module_groebner(
    inputs: &[ModElem],
    ord: &Arc<ModOrder>,
    field: &PrimeField,
    track: bool,
) -> Result<(Vec<ModElem>, Option<Vec<ModElem>>)> {
    let p = field.modulus();
    let nvars = inputs
        .iter()
        .flatten()
        .map(|t| t.m.nvars())
        .next()
        .unwrap_or(0);
    let cof_ord = Arc::new(ModOrder::Top(MonomialOrder::Grevlex));

    let mut basis: Vec<ModElem> = Vec::new();
    let mut leads: Vec<(Monomial, u32)> = Vec::new();
    let mut cofs: Vec<ModElem> = Vec::new();
    let mut input_syzygies: Vec<ModElem> = Vec::new();

    let mut ingest: Vec<(usize, ModElem)> = inputs
        .iter()
        .enumerate()
        .map(|(i, e)| (i, normalize(e.clone(), ord, field)))
        .collect();
    if !track {
        ingest.sort_by(|a, b| match (a.1.first(), b.1.first()) {
            (Some(ta), Some(tb)) => ord.cmp_terms(ta, tb),
            _ => Ordering::Equal,
        });
    }

    for (i, e) in ingest {
        if e.is_empty() {
            if track {
                // a zero input is itself a syzygy
                input_syzygies.push(vec![ModTerm {
                    c: 1,
                    comp: i as u32,
                    m: Monomial::one(nvars),
                }]);
            }
            continue;
        }
        let mut e = e;
        if track {
            // keep inputs verbatim so cofactors stay simple
            let lc = make_monic(&mut e, field);
            basis.push(e);
            leads.push(lead_of(basis.last().unwrap()));
            cofs.push(vec![ModTerm {
                c: field.inv(lc),
                comp: i as u32,
                m: Monomial::one(nvars),
            }]);
        } else {
            let r = reduce_full(e, &basis, &leads, ord, p, None);
            if r.is_empty() {
                continue;
            }
            let mut r = r;
            make_monic(&mut r, field);
            basis.push(r);
            leads.push(lead_of(basis.last().unwrap()));
        }
    }

    // pair queue: minimal lcm degree first
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let seed_pairs = |basis_len: usize, pairs: &mut Vec<(usize, usize)>| {
        for i in 0..basis_len {
            for j in i + 1..basis_len {
                if leads[i].1 == leads[j].1 {
                    pairs.push((i, j));
                }
            }
        }
    };
    seed_pairs(basis.len(), &mut pairs);

    while !pairs.is_empty() {
        // normal strategy
        let (pos, &(i, j)) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| {
                (
                    leads[i].0.lcm(&leads[j].0).degree(),
                    i,
                    j,
                )
            })
            .unwrap();
        pairs.swap_remove(pos);
        done.insert((i, j));

        let lcm = leads[i].0.lcm(&leads[j].0);
        // chain criterion
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j || leads[k].1 != leads[i].1 {
                continue;
            }
            if leads[k].0.divides(&lcm) {
                let p1 = (i.min(k), i.max(k));
                let p2 = (j.min(k), j.max(k));
                if done.contains(&p1) && done.contains(&p2) {
                    skip = true;
                    break;
                }
            }
        }
        if skip && !track {
            continue;
        }

        let ui = leads[i].0.div(&lcm);
        let uj = leads[j].0.div(&lcm);
        let mut s: ModElem = basis[i]
            .iter()
            .map(|t| ModTerm {
                c: t.c,
                comp: t.comp,
                m: t.m.mul(&ui),
            })
            .collect();
        check_cap(&s)?;
        sub_scaled(&mut s, 1, &uj, &basis[j], ord, p);
        let mut trace: Trace = Vec::new();
        let tr = if track { Some(&mut trace) } else { None };
        let rem = reduce_full(s, &basis, &leads, ord, p, tr);

        if rem.is_empty() {
            if track {
                // syzygy over the basis, pushed through cofactors to inputs
                let mut tau: ModElem = Vec::new();
                add_scaled(&mut tau, 1, &ui, &cofs[i], &cof_ord, field);
                add_scaled(&mut tau, field.neg(1), &uj, &cofs[j], &cof_ord, field);
                for (c, m, k) in trace {
                    add_scaled(&mut tau, field.neg(c), &m, &cofs[k], &cof_ord, field);
                }
                if !tau.is_empty() {
                    input_syzygies.push(tau);
                }
            }
            continue;
        }
        let mut r = rem;
        check_cap(&r)?;
        let lc = make_monic(&mut r, field);
        if track {
            let mut cof: ModElem = Vec::new();
            add_scaled(&mut cof, 1, &ui, &cofs[i], &cof_ord, field);
            add_scaled(&mut cof, field.neg(1), &uj, &cofs[j], &cof_ord, field);
            for (c, m, k) in &trace {
                add_scaled(&mut cof, field.neg(*c), m, &cofs[*k], &cof_ord, field);
            }
            let inv = field.inv(lc);
            for t in cof.iter_mut() {
                t.c = field.mul(t.c, inv);
            }
            cofs.push(cof);
        }
        let idx = basis.len();
        basis.push(r);
        leads.push(lead_of(basis.last().unwrap()));
        for k in 0..idx {
            if leads[k].1 == leads[idx].1 {
                pairs.push((k, idx));
            }
        }
    }

    if track {
        return Ok((basis, Some(input_syzygies)));
    }

    // reduced basis: minimal leads, reduced tails, deterministic order
    let mut order_idx: Vec<usize> = (0..basis.len()).collect();
    order_idx.sort_by(|&a, &b| {
        ord.cmp((&leads[a].0, leads[a].1), (&leads[b].0, leads[b].1))
    });
    let mut kept: Vec<usize> = Vec::new();
    for idx in order_idx {
        if !kept
            .iter()
            .any(|&k| leads[k].1 == leads[idx].1 && leads[k].0.divides(&leads[idx].0))
        {
            kept.push(idx);
        }
    }
    let kept_basis: Vec<ModElem> = kept.iter().map(|&k| basis[k].clone()).collect();
    let kept_leads: Vec<(Monomial, u32)> = kept.iter().map(|&k| leads[k].clone()).collect();
    let mut reduced = Vec::with_capacity(kept_basis.len());
    for i in 0..kept_basis.len() {
        let mut others = kept_basis.clone();
        let mut other_leads = kept_leads.clone();
        others.remove(i);
        other_leads.remove(i);
        let mut t = reduce_full(kept_basis[i].clone(), &others, &other_leads, ord, p, None);
        make_monic(&mut t, field);
        reduced.push(t);
    }
    reduced.sort_by(|a, b| ord.cmp_terms(&b[0], &a[0]));
    Ok((reduced, None))
}

/// Membership of an element in the submodule generated by a module
/// Groebner basis.
pub(crate) fn module_contains(
    basis: &[ModElem],
    elem: &ModElem,
    ord: &ModOrder,
    field: &PrimeField,
) -> bool {
    let leads: Vec<(Monomial, u32)> = basis.iter().map(lead_of).collect();
    reduce_full(
        normalize(elem.clone(), ord, field),
        basis,
        &leads,
        ord,
        field.modulus(),
        None,
    )
    .is_empty()
}
