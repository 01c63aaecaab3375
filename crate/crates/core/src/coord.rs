//! Coordination calculus for families of subspaces.
//!
//! The discoordination of A₁,…,A_m is the minimum of
//! Σᵢ (dim Aᵢ − |X ∩ Aᵢ|) over independent sets X; it vanishes exactly
//! when one basis simultaneously coordinates every member. This module
//! computes it three ways (closed formula over the k-fold intersection
//! chain, matroid greedy over an exhaustive ground set, and an explicit
//! greedy minimizer), decides quasi-increasing properties, decomposes
//! three-subspace families constructively, and evaluates integer
//! formulas in dim/quotient-dim terms.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::linalg::Vector;
use crate::subspace::{Decomposition, QuotientMap, Subspace, SubspaceFamily};

/// Number of family members containing x.
pub fn meet(x: &Vector, fam: &SubspaceFamily) -> Result<usize> {
    let mut count = 0;
    for a in fam.iter() {
        if a.contains(x)? {
            count += 1;
        }
    }
    Ok(count)
}

/// S_k = Σ over k-subsets I of ∩_{i∈I} Aᵢ, for k = 1..=m. The chain
/// decreases: S₁ is the total sum, S_m the total intersection.
pub fn s_chain(fam: &SubspaceFamily) -> Vec<Subspace> {
    let m = fam.len();
    let (field, ambient) = (fam.field(), fam.ambient());
    (1..=m)
        .map(|k| {
            let mut acc = Subspace::zero(field, ambient);
            for subset in (0..m).combinations(k) {
                let mut cap = fam.member(subset[0]).clone();
                for &i in &subset[1..] {
                    cap = cap.intersect(fam.member(i)).expect("family shares an ambient");
                }
                acc = acc.sum(&cap).expect("family shares an ambient");
            }
            acc
        })
        .collect()
}

/// Σᵢ dim(Aᵢ) − Σₖ dim(S_k); zero exactly when the family is
/// coordinated.
pub fn discoordination(fam: &SubspaceFamily) -> usize {
    let member_total: usize = fam.iter().map(|a| a.dim()).sum();
    let chain_total: usize = s_chain(fam).iter().map(|s| s.dim()).sum();
    member_total - chain_total
}

/// Largest ambient enumeration the brute-force minimizer accepts.
pub const BRUTE_FORCE_ELEMENT_LIMIT: u64 = 1 << 16;

/// Exact minimum of Σᵢ (dim Aᵢ − |X ∩ Aᵢ|) over independent sets X,
/// computed from the definition: every vector of ∪Aᵢ is weighted by its
/// meet number and a maximum-weight independent set is selected
/// greedily (greedy is optimal on a linear matroid). Refuses ambients
/// with p^n past the enumeration guard.
pub fn discoordination_brute(fam: &SubspaceFamily) -> Result<usize> {
    let (field, n) = (fam.field(), fam.ambient());
    let count = (field.p() as u64).checked_pow(n as u32);
    if count.is_none_or(|c| c > BRUTE_FORCE_ELEMENT_LIMIT) {
        return Err(Error::refused(format!(
            "brute-force minimization enumerates p^n vectors and refuses p^n > {} (got p={}, n={})",
            BRUTE_FORCE_ELEMENT_LIMIT,
            field.p(),
            n
        )));
    }
    // Candidates: nonzero members of ∪Aᵢ with their meet weights.
    // Vectors outside every member have weight 0 and can be skipped.
    let mut seen: Vec<Vec<u8>> = Vec::new();
    let mut weighted: Vec<(usize, Vector)> = Vec::new();
    for a in fam.iter() {
        for v in a.iter_elements() {
            if v.is_zero() || seen.contains(&v.coords().to_vec()) {
                continue;
            }
            seen.push(v.coords().to_vec());
            weighted.push((meet(&v, fam)?, v));
        }
    }
    // Greedy max-weight independent set: weight descending, then
    // coordinate order for determinism.
    weighted.sort_by(|(wa, va), (wb, vb)| wb.cmp(wa).then(va.coords().cmp(vb.coords())));
    let mut span = Subspace::zero(field, n);
    let mut picked_weight = 0usize;
    for (w, v) in weighted {
        if !span.reduce(&v).is_zero() {
            span = span.sum(&Subspace::span(field, n, &[v])?)?;
            picked_weight += w;
        }
    }
    let member_total: usize = fam.iter().map(|a| a.dim()).sum();
    Ok(member_total - picked_weight)
}

/// Explicit minimizer: X_j collects vectors of meet exactly j whose
/// images modulo S_{j+1} are independent, chosen from the j-fold
/// intersections in lexicographic subset order.
#[derive(Debug, Clone)]
pub struct MinimizerResult {
    /// parts[j] = X_j for j = 0..=m; X₀ stays empty.
    pub parts: Vec<Vec<Vector>>,
    /// Σᵢ (dim Aᵢ − |X ∩ Aᵢ|) for the selected X, computed from X
    /// itself.
    pub discoordination: usize,
    /// dim S₁ … dim S_m.
    pub s_dims: Vec<usize>,
}

impl MinimizerResult {
    pub fn all_vectors(&self) -> Vec<Vector> {
        self.parts.iter().flatten().cloned().collect()
    }
}

pub fn greedy_minimizer(fam: &SubspaceFamily) -> MinimizerResult {
    let m = fam.len();
    let (field, ambient) = (fam.field(), fam.ambient());
    let chain = s_chain(fam);
    let mut parts: Vec<Vec<Vector>> = vec![Vec::new(); m + 1];
    for j in (1..=m).rev() {
        // Vectors of meet ≥ j+1 all lie in S_{j+1}, so starting the
        // accumulator there forces every kept vector to meet exactly j.
        let mut acc =
            if j < m { chain[j].clone() } else { Subspace::zero(field, ambient) };
        for subset in (0..m).combinations(j) {
            let mut cap = fam.member(subset[0]).clone();
            for &i in &subset[1..] {
                cap = cap.intersect(fam.member(i)).expect("family shares an ambient");
            }
            for row in cap.basis_rows() {
                if !acc.reduce(&row).is_zero() {
                    parts[j].push(row.clone());
                    acc = acc
                        .sum(&Subspace::span(field, ambient, &[row]).unwrap())
                        .expect("family shares an ambient");
                }
            }
        }
    }
    let member_total: usize = fam.iter().map(|a| a.dim()).sum();
    let mut covered = 0usize;
    for v in parts.iter().flatten() {
        covered += meet(v, fam).expect("selected vectors live in the family ambient");
    }
    MinimizerResult {
        parts,
        discoordination: member_total - covered,
        s_dims: chain.iter().map(|s| s.dim()).collect(),
    }
}

/// Per-level defect d_j = Σᵢ dim([Aᵢ∩S_j]_{S_{j+1}}) − j·dim(S_j/S_{j+1});
/// each d_j ≥ 0 and Σⱼ d_j equals the discoordination.
pub fn d_profile(fam: &SubspaceFamily) -> Vec<i64> {
    let m = fam.len();
    let chain = s_chain(fam);
    let zero = Subspace::zero(fam.field(), fam.ambient());
    (1..=m)
        .map(|j| {
            let sj = &chain[j - 1];
            let sj1 = if j < m { &chain[j] } else { &zero };
            let mut total = 0i64;
            for a in fam.iter() {
                let meet_j = a.intersect(sj).expect("family shares an ambient").dim() as i64;
                let meet_j1 = a.intersect(sj1).expect("family shares an ambient").dim() as i64;
                total += meet_j - meet_j1;
            }
            total - (j as i64) * (sj.dim() as i64 - sj1.dim() as i64)
        })
        .collect()
}

/// True iff for every position r, V_r ∩ (V₁+…+V_{r−1}) lies inside the
/// sum of the earlier members contained in V_r.
pub fn is_quasi_increasing(seq: &SubspaceFamily) -> bool {
    let (field, ambient) = (seq.field(), seq.ambient());
    for r in 1..seq.len() {
        let vr = seq.member(r);
        let mut prefix = Subspace::zero(field, ambient);
        let mut included = Subspace::zero(field, ambient);
        for i in 0..r {
            let vi = seq.member(i);
            prefix = prefix.sum(vi).expect("family shares an ambient");
            if vr.contains_subspace(vi).expect("family shares an ambient") {
                included = included.sum(vi).expect("family shares an ambient");
            }
        }
        let lhs = vr.intersect(&prefix).expect("family shares an ambient");
        if !included.contains_subspace(&lhs).expect("family shares an ambient") {
            return false;
        }
    }
    true
}

/// Order-independent variant: with J_r = {i : V_r ⊄ Vᵢ} and
/// K_r = {i ≠ r : Vᵢ ⊆ V_r}, requires V_r ∩ Σ_{i∈J_r} Vᵢ ⊆ Σ_{i∈K_r} Vᵢ
/// at every r. Members must be pairwise distinct.
pub fn is_strongly_quasi_increasing(fam: &SubspaceFamily) -> Result<bool> {
    let m = fam.len();
    for i in 0..m {
        for j in i + 1..m {
            if fam.member(i) == fam.member(j) {
                return Err(Error::contract(
                    "the strong quasi-increasing test requires pairwise distinct members",
                ));
            }
        }
    }
    let (field, ambient) = (fam.field(), fam.ambient());
    for r in 0..m {
        let vr = fam.member(r);
        let mut j_sum = Subspace::zero(field, ambient);
        let mut k_sum = Subspace::zero(field, ambient);
        for i in 0..m {
            let vi = fam.member(i);
            if !vi.contains_subspace(vr)? {
                j_sum = j_sum.sum(vi)?;
            }
            if i != r && vr.contains_subspace(vi)? {
                k_sum = k_sum.sum(vi)?;
            }
        }
        if !k_sum.contains_subspace(&vr.intersect(&j_sum)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the coordination theorems on one input triple (plus an
/// optional subspace inside A∩B): true means the corresponding family
/// has discoordination zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinationReport {
    /// (A∩B∩C, A∩B, A∩C, B∩C, A, B).
    pub six_family: bool,
    /// (A∩B∩C∩D, A∩B∩C, D, A∩B, A∩C, B∩C, A, B); present only when the
    /// extra subspace was supplied.
    pub eight_family: Option<bool>,
    /// The 9 pairwise intersections of the chains (A, A+B, A+B+C) and
    /// (C, C+B, C+B+A).
    pub chain_grid: bool,
    /// V₀ together with every (m−1)-fold intersection of the supplied
    /// family.
    pub leave_one_out: bool,
}

impl CoordinationReport {
    pub fn all_pass(&self) -> bool {
        self.six_family
            && self.eight_family.unwrap_or(true)
            && self.chain_grid
            && self.leave_one_out
    }
}

pub fn coordination_theorem_suite(
    a: &Subspace,
    b: &Subspace,
    c: &Subspace,
    d: Option<&Subspace>,
) -> Result<CoordinationReport> {
    let ab = a.intersect(b)?;
    let ac = a.intersect(c)?;
    let bc = b.intersect(c)?;
    let abc = ab.intersect(c)?;

    let six = SubspaceFamily::new(vec![
        abc.clone(),
        ab.clone(),
        ac.clone(),
        bc.clone(),
        a.clone(),
        b.clone(),
    ])?;
    let six_family = discoordination(&six) == 0;

    let eight_family = match d {
        None => None,
        Some(d) => {
            if !ab.contains_subspace(d)? {
                return Err(Error::contract(
                    "the eight-space coordination theorem requires the extra subspace to lie inside A ∩ B",
                ));
            }
            let eight = SubspaceFamily::new(vec![
                abc.intersect(d)?,
                abc.clone(),
                d.clone(),
                ab.clone(),
                ac.clone(),
                bc.clone(),
                a.clone(),
                b.clone(),
            ])?;
            Some(discoordination(&eight) == 0)
        }
    };

    // Two increasing chains built from the inputs; all 9 pairwise
    // intersections must be coordinated.
    let chain1 = [a.clone(), a.sum(b)?, a.sum(b)?.sum(c)?];
    let chain2 = [c.clone(), c.sum(b)?, c.sum(b)?.sum(a)?];
    let mut grid = Vec::with_capacity(9);
    for x in &chain1 {
        for y in &chain2 {
            grid.push(x.intersect(y)?);
        }
    }
    let chain_grid = discoordination(&SubspaceFamily::new(grid)?) == 0;

    // (m−1)-fold intersections of the supplied family, plus the total
    // intersection V₀.
    let mut members = vec![a.clone(), b.clone(), c.clone()];
    if let Some(d) = d {
        members.push(d.clone());
    }
    let m = members.len();
    let mut v0 = members[0].clone();
    for x in &members[1..] {
        v0 = v0.intersect(x)?;
    }
    let mut leave_out = vec![v0];
    for skip in 0..m {
        let mut cap: Option<Subspace> = None;
        for (i, x) in members.iter().enumerate() {
            if i == skip {
                continue;
            }
            cap = Some(match cap {
                None => x.clone(),
                Some(acc) => acc.intersect(x)?,
            });
        }
        leave_out.push(cap.expect("at least two members remain"));
    }
    let leave_one_out = discoordination(&SubspaceFamily::new(leave_out)?) == 0;

    Ok(CoordinationReport { six_family, eight_family, chain_grid, leave_one_out })
}

/// Pairwise-intersection sum A∩B + A∩C + B∩C of a triple.
pub fn pairwise_sum(a: &Subspace, b: &Subspace, c: &Subspace) -> Result<Subspace> {
    a.intersect(b)?.sum(&a.intersect(c)?)?.sum(&b.intersect(c)?)
}

/// Replaces (ta, tb, tc) with (a′, b′, c′) in the same cosets modulo
/// S₂ = A∩B + A∩C + B∩C and with a′ + b′ = c′ exactly. Writes
/// ta + tb − tc ∈ S₂ as v₁ + v₂ + v₃ over the pairwise intersections
/// and moves each part onto the side that absorbs it.
pub fn lift_triple(
    a: &Subspace,
    b: &Subspace,
    c: &Subspace,
    ta: &Vector,
    tb: &Vector,
    tc: &Vector,
) -> Result<(Vector, Vector, Vector)> {
    if !a.contains(ta)? {
        return Err(Error::contract("lifting requires the first vector to lie in the first subspace"));
    }
    if !b.contains(tb)? {
        return Err(Error::contract("lifting requires the second vector to lie in the second subspace"));
    }
    if !c.contains(tc)? {
        return Err(Error::contract("lifting requires the third vector to lie in the third subspace"));
    }
    let ab = a.intersect(b)?;
    let ac = a.intersect(c)?;
    let bc = b.intersect(c)?;
    let target = ta.add(tb).sub(tc);
    let stacked = ab.basis().vstack(ac.basis())?.vstack(bc.basis())?;
    let Some(x) = stacked.solve(&target)? else {
        return Err(Error::contract(
            "lifting requires the first two vectors to sum to the third modulo the pairwise intersections",
        ));
    };
    let field = a.field();
    let (nab, nac) = (ab.dim(), ac.dim());
    let v1 = Vector::new(field, x.coords()[..nab].to_vec()).mul_matrix(ab.basis());
    let v2 = Vector::new(field, x.coords()[nab..nab + nac].to_vec()).mul_matrix(ac.basis());
    let v3 = Vector::new(field, x.coords()[nab + nac..].to_vec()).mul_matrix(bc.basis());
    Ok((ta.sub(&v1), tb.clone(), tc.add(&v2).add(&v3)))
}

/// Constructive decomposition of the ambient space into 𝒰₁ ⊕ 𝒰₂ for a
/// triple (A, B, C): inside 𝒰₁ the three subspaces are coordinated by
/// `u1_basis`; 𝒰₂ is spanned by m triples (aᵢ, bᵢ, cᵢ) with
/// cᵢ = aᵢ + bᵢ, one per unit of discoordination.
#[derive(Debug, Clone)]
pub struct ThreeDecomposition {
    pub u1_basis: Vec<Vector>,
    pub triples: Vec<(Vector, Vector, Vector)>,
    pub m: usize,
    /// (X∩𝒰₁, X∩𝒰₂) for X = A, B, C in input order.
    pub factors: [(Subspace, Subspace); 3],
}

impl ThreeDecomposition {
    pub fn u1(&self) -> Subspace {
        let field = self.factors[0].0.field();
        let ambient = self.factors[0].0.ambient();
        Subspace::span(field, ambient, &self.u1_basis).expect("basis rows share the ambient")
    }

    pub fn u2(&self) -> Subspace {
        let field = self.factors[0].0.field();
        let ambient = self.factors[0].0.ambient();
        let mut gens = Vec::with_capacity(2 * self.triples.len());
        for (ai, bi, _) in &self.triples {
            gens.push(ai.clone());
            gens.push(bi.clone());
        }
        Subspace::span(field, ambient, &gens).expect("triples share the ambient")
    }

    pub fn decomposition(&self) -> Decomposition {
        Decomposition::new(
            SubspaceFamily::new(vec![self.u1(), self.u2()]).expect("parts share the ambient"),
        )
        .expect("the two parts are independent by construction")
    }
}

/// Walks `rows` in order keeping each row whose image modulo
/// `base` + kept stays independent; returns the kept rows and the grown
/// accumulator.
fn extend_independent_mod(
    rows: &[Vector],
    base: &Subspace,
) -> Result<(Vec<Vector>, Subspace)> {
    let mut acc = base.clone();
    let mut kept = Vec::new();
    for row in rows {
        if !acc.reduce(row).is_zero() {
            kept.push(row.clone());
            acc = acc.sum(&Subspace::span(acc.field(), acc.ambient(), &[row.clone()])?)?;
        }
    }
    Ok((kept, acc))
}

pub fn decompose_three(a: &Subspace, b: &Subspace, c: &Subspace) -> Result<ThreeDecomposition> {
    let (field, ambient) = (a.field(), a.ambient());
    let s2 = pairwise_sum(a, b, c)?;

    // A simultaneous basis for the five intersection spaces and A, B:
    // the greedy minimizer of the six-space family realizes the
    // coordination theorem, and its restriction to S₂ is a basis of S₂.
    let six = SubspaceFamily::new(vec![
        a.intersect(b)?.intersect(c)?,
        a.intersect(b)?,
        a.intersect(c)?,
        b.intersect(c)?,
        a.clone(),
        b.clone(),
    ])?;
    let coordinating = greedy_minimizer(&six).all_vectors();
    let mut x_s2 = Vec::new();
    for v in &coordinating {
        if s2.contains(v)? {
            x_s2.push(v.clone());
        }
    }
    debug_assert_eq!(x_s2.len(), s2.dim());

    // Representatives of (A+B)∩C modulo S₂; their count is the
    // discoordination m.
    let apb_c = a.sum(b)?.intersect(c)?;
    let (c_reps, _) = extend_independent_mod(&apb_c.basis_rows(), &s2)?;
    let m = c_reps.len();
    debug_assert_eq!(m, apb_c.quotient_dim(&s2)?);

    // Split each representative across A and B, then pass it through
    // the lifting construction; exactness c = a + b already holds, so
    // this validates the cosets rather than moving anything.
    let ab_stack = a.basis().vstack(b.basis())?;
    let mut triples = Vec::with_capacity(m);
    for ci in &c_reps {
        let x = ab_stack
            .solve(ci)?
            .expect("representatives of (A+B)∩C split over A and B");
        let ai = Vector::new(field, x.coords()[..a.dim()].to_vec()).mul_matrix(a.basis());
        let bi = Vector::new(field, x.coords()[a.dim()..].to_vec()).mul_matrix(b.basis());
        let (ai, bi, ci) = lift_triple(a, b, c, &ai, &bi, ci)?;
        debug_assert_eq!(ai.add(&bi), ci);
        triples.push((ai, bi, ci));
    }

    // Grow the coordinated part: S₂'s basis, then completions of the
    // aᵢ within A, the bᵢ within B, and the cᵢ within C, all modulo S₂,
    // then standard vectors topping A+B+C up to the whole ambient.
    let mut u1_basis = x_s2;
    let span_of = |vs: &[Vector]| Subspace::span(field, ambient, vs);
    let a_list: Vec<Vector> = triples.iter().map(|(ai, _, _)| ai.clone()).collect();
    let b_list: Vec<Vector> = triples.iter().map(|(_, bi, _)| bi.clone()).collect();
    let c_list: Vec<Vector> = triples.iter().map(|(_, _, ci)| ci.clone()).collect();
    let (a_ext, _) = extend_independent_mod(&a.basis_rows(), &s2.sum(&span_of(&a_list)?)?)?;
    let (b_ext, _) = extend_independent_mod(&b.basis_rows(), &s2.sum(&span_of(&b_list)?)?)?;
    let (c_ext, _) = extend_independent_mod(&c.basis_rows(), &s2.sum(&span_of(&c_list)?)?)?;
    u1_basis.extend(a_ext);
    u1_basis.extend(b_ext);
    u1_basis.extend(c_ext);
    let total = a.sum(b)?.sum(c)?;
    let units: Vec<Vector> = (0..ambient).map(|i| Vector::unit(field, ambient, i)).collect();
    let (top_up, _) = extend_independent_mod(&units, &total)?;
    u1_basis.extend(top_up);

    let u1 = span_of(&u1_basis)?;
    let mut u2_gens = a_list;
    u2_gens.extend(b_list);
    let u2 = span_of(&u2_gens)?;
    let factors = [
        (a.intersect(&u1)?, a.intersect(&u2)?),
        (b.intersect(&u1)?, b.intersect(&u2)?),
        (c.intersect(&u1)?, c.intersect(&u2)?),
    ];
    Ok(ThreeDecomposition { u1_basis, triples, m, factors })
}

/// Discoordination of (a, b, c) in the ambient space and of the images
/// modulo d, where d ⊆ a∩b; the theorem says the two agree.
pub fn quotient_discoord_check(
    a: &Subspace,
    b: &Subspace,
    c: &Subspace,
    d: &Subspace,
) -> Result<(usize, usize)> {
    if !a.intersect(b)?.contains_subspace(d)? {
        return Err(Error::contract(
            "the quotient comparison requires the denominator to lie inside A ∩ B",
        ));
    }
    let here = discoordination(&SubspaceFamily::new(vec![a.clone(), b.clone(), c.clone()])?);
    let q = QuotientMap::new(d);
    let images = SubspaceFamily::new(vec![q.image(a)?, q.image(b)?, q.image(c)?])?;
    Ok((here, discoordination(&images)))
}

/// Discoordination before and after passing to the quotient by S_k,
/// plus the equality flag. The quotient never exceeds the original;
/// equality is guaranteed at k = m and k = m−1.
pub fn quotient_by_sk_check(fam: &SubspaceFamily, k: usize) -> Result<(usize, usize, bool)> {
    let m = fam.len();
    if k == 0 || k > m {
        return Err(Error::contract("the quotient level must satisfy 1 ≤ k ≤ m"));
    }
    let lhs = discoordination(fam);
    let sk = &s_chain(fam)[k - 1];
    let q = QuotientMap::new(sk);
    let images: Vec<Subspace> =
        fam.iter().map(|a| q.image(a)).collect::<Result<_>>()?;
    let rhs = discoordination(&SubspaceFamily::new(images)?);
    Ok((lhs, rhs, lhs == rhs))
}

/// Inclusion–exclusion mutual information of three subspaces; satisfies
/// three_way_mutual == dim(a∩b∩c) − discoordination.
pub fn three_way_mutual(a: &Subspace, b: &Subspace, c: &Subspace) -> Result<i64> {
    let d = |s: &Subspace| s.dim() as i64;
    Ok(d(a) + d(b) + d(c) - d(&a.sum(b)?) - d(&a.sum(c)?) - d(&b.sum(c)?)
        + d(&a.sum(b)?.sum(c)?))
}

/// Lattice expression over three subspace variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Variable index 0, 1, or 2.
    Leaf(usize),
    Sum(Box<Expr>, Box<Expr>),
    Intersect(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn leaf(i: usize) -> Expr {
        Expr::Leaf(i)
    }

    pub fn sum(self, other: Expr) -> Expr {
        Expr::Sum(Box::new(self), Box::new(other))
    }

    pub fn intersect(self, other: Expr) -> Expr {
        Expr::Intersect(Box::new(self), Box::new(other))
    }

    fn eval(&self, args: [&Subspace; 3]) -> Result<Subspace> {
        match self {
            Expr::Leaf(i) => {
                if *i >= 3 {
                    return Err(Error::contract(
                        "formula leaves must reference variables 0, 1, or 2",
                    ));
                }
                Ok(args[*i].clone())
            }
            Expr::Sum(l, r) => l.eval(args)?.sum(&r.eval(args)?),
            Expr::Intersect(l, r) => l.eval(args)?.intersect(&r.eval(args)?),
        }
    }
}

/// One weighted term: dim of the numerator expression, or the quotient
/// dimension relative to the denominator when one is present.
#[derive(Debug, Clone)]
pub struct Term {
    pub weight: i64,
    pub numerator: Expr,
    pub denominator: Option<Expr>,
}

/// Integer combination of dim / quotient-dim terms in three variables.
pub type Formula = Vec<Term>;

pub fn formula_eval(f: &Formula, a: &Subspace, b: &Subspace, c: &Subspace) -> Result<i64> {
    let args = [a, b, c];
    let mut total = 0i64;
    for term in f {
        let num = term.numerator.eval(args)?;
        let value = match &term.denominator {
            None => num.dim() as i64,
            Some(den) => num.quotient_dim(&den.eval(args)?)? as i64,
        };
        total += term.weight * value;
    }
    Ok(total)
}

/// Decides balancedness and the proportionality constant. A formula is
/// balanced iff it vanishes on every triple of coordinate subspaces of
/// GF(2)³: three coordinates realize all Venn pieces of three sets, so
/// the per-piece coefficient sums all appear among these evaluations.
/// The constant k is the evaluation on the basic discoordinated triple
/// (span e₁, span e₂, span(e₁+e₂)); for balanced f, f(A,B,C) equals
/// k · discoordination(A,B,C) everywhere.
pub fn balanced_check(f: &Formula) -> Result<(bool, i64)> {
    let field = Field::GF2;
    let coords: Vec<Subspace> = (0..8u32)
        .map(|mask| {
            let gens: Vec<Vector> = (0..3)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| Vector::unit(field, 3, i))
                .collect();
            Subspace::span(field, 3, &gens).expect("unit vectors share the ambient")
        })
        .collect();
    let mut balanced = true;
    'outer: for a in &coords {
        for b in &coords {
            for c in &coords {
                if formula_eval(f, a, b, c)? != 0 {
                    balanced = false;
                    break 'outer;
                }
            }
        }
    }
    let (ca, cb, cc) = basic_discoordinated_triple();
    let k = formula_eval(f, &ca, &cb, &cc)?;
    Ok((balanced, k))
}

/// The smallest discoordinated triple: span(e₁), span(e₂), span(e₁+e₂)
/// in GF(2)².
pub fn basic_discoordinated_triple() -> (Subspace, Subspace, Subspace) {
    let field = Field::GF2;
    let e1 = Vector::unit(field, 2, 0);
    let e2 = Vector::unit(field, 2, 1);
    let mk = |v: &Vector| Subspace::span(field, 2, &[v.clone()]).unwrap();
    (mk(&e1), mk(&e2), mk(&e1.add(&e2)))
}

/// The six balanced formulas that each evaluate to exactly the
/// discoordination of (A, B, C). Leaves: 0 = A, 1 = B, 2 = C.
pub fn discoordination_formulas() -> Vec<Formula> {
    use Expr::Leaf;
    let a = || Leaf(0);
    let b = || Leaf(1);
    let c = || Leaf(2);
    let dim = |w: i64, e: Expr| Term { weight: w, numerator: e, denominator: None };
    let qd = |w: i64, n: Expr, d: Expr| Term { weight: w, numerator: n, denominator: Some(d) };
    let abc = || a().intersect(b()).intersect(c());

    // dim(A∩B∩C) − I(A;B;C), with the mutual information expanded by
    // inclusion–exclusion.
    let f1 = vec![
        dim(1, abc()),
        dim(-1, a()),
        dim(-1, b()),
        dim(-1, c()),
        dim(1, a().sum(b())),
        dim(1, a().sum(c())),
        dim(1, b().sum(c())),
        dim(-1, a().sum(b()).sum(c())),
    ];
    // dim(C∩(A+B)) − dim(C∩A) − dim(C∩B) + dim(A∩B∩C).
    let f2 = vec![
        dim(1, c().intersect(a().sum(b()))),
        dim(-1, c().intersect(a())),
        dim(-1, c().intersect(b())),
        dim(1, abc()),
    ];
    // dim of ((A+C)∩(B+C)) over C, + dim(A∩B∩C) − dim(A∩B).
    let f3 = vec![
        qd(1, a().sum(c()).intersect(b().sum(c())), c()),
        dim(1, abc()),
        dim(-1, a().intersect(b())),
    ];
    // Same with the quotient expanded, C being inside the numerator.
    let f4 = vec![
        dim(1, a().sum(c()).intersect(b().sum(c()))),
        dim(-1, c()),
        dim(1, abc()),
        dim(-1, a().intersect(b())),
    ];
    // dim((A+C)∩(B+C)) − dim((A∩B)+C).
    let f5 = vec![
        dim(1, a().sum(c()).intersect(b().sum(c()))),
        dim(-1, a().intersect(b()).sum(c())),
    ];
    // I(B;C|A) − dim of (B∩C) over A.
    let f6 = vec![
        dim(1, a().sum(b())),
        dim(1, a().sum(c())),
        dim(-1, a()),
        dim(-1, a().sum(b()).sum(c())),
        qd(-1, b().intersect(c()), a()),
    ];
    vec![f1, f2, f3, f4, f5, f6]
}
