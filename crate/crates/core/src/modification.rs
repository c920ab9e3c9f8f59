//! Rees presentations, the modification ring `A[I/f]` in its two
//! presentations, proper and strict transforms of `div(f)` in the blowup,
//! membership in `A[I/f]`, and centres extracted from fractional ideals.
//!
//! Rees variables are named from a caller-supplied pool, falling back to
//! `T0, T1, ...` (indexed by position) once the pool runs out.

use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::groebner::{buchberger_in, lift};
use crate::ideal::{Fraction, FractionalIdeal, Ideal};
use crate::monomial::MonomialOrder;
use crate::poly::{check_same_ring, Polynomial};
use crate::ring::{PolyRing, Position};

/// Picks `count` Rees variable names: pool entries not already used by
/// `base`, then `T{i}` (suffixed with `_` until fresh).
pub fn rees_names(base: &PolyRing, count: usize, pool: &[String]) -> Vec<String> {
    let mut names: Vec<String> = pool
        .iter()
        .filter(|n| base.var_index(n).is_none())
        .take(count)
        .cloned()
        .collect();
    let mut i = names.len();
    while names.len() < count {
        let mut name = format!("T{i}");
        while base.var_index(&name).is_some() || names.contains(&name) {
            name.push('_');
        }
        names.push(name);
        i += 1;
    }
    names
}

/// `A[T_0..T_r]`, with the order of `A` extended to the new variables.
pub fn rees_ring(base: &PolyRing, names: &[String]) -> Result<PolyRing> {
    base.extend(
        names,
        Position::Back,
        base.order().extended_back(names.len()),
    )
}

/// `A[It] ≅ A[T]/K` for an ordered generator list `a_0..a_r` of `I`.
#[derive(Debug, Clone)]
pub struct ReesPresentation {
    base_ring: PolyRing,
    rees_ring: PolyRing,
    generators: Vec<Polynomial>,
    kernel: Ideal,
    rees_vars: Vec<String>,
}

impl ReesPresentation {
    pub fn base_ring(&self) -> &PolyRing {
        &self.base_ring
    }

    pub fn rees_ring(&self) -> &PolyRing {
        &self.rees_ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn kernel(&self) -> &Ideal {
        &self.kernel
    }

    pub fn rees_vars(&self) -> &[String] {
        &self.rees_vars
    }

    /// Index of `T_i` in the Rees ring.
    pub fn t_index(&self, i: usize) -> usize {
        self.base_ring.nvars() + i
    }

    pub fn t_var(&self, i: usize) -> Polynomial {
        Polynomial::var_at(&self.rees_ring, self.t_index(i))
    }

    pub fn t_indices(&self) -> Vec<usize> {
        (0..self.generators.len())
            .map(|i| self.t_index(i))
            .collect()
    }

    /// `⟨T_0..T_r⟩`.
    pub fn irrelevant_ideal(&self) -> Ideal {
        let gens = (0..self.generators.len()).map(|i| self.t_var(i)).collect();
        Ideal::new(&self.rees_ring, gens)
            .expect("same ring")
            .with_cancel(self.kernel.cancel_token().clone())
    }

    /// `I·A[T]`.
    pub fn extended_ideal(&self) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|a| a.to_ring(&self.rees_ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.rees_ring, gens)?.with_cancel(self.kernel.cancel_token().clone()))
    }

    /// Maps `T_i ↦ a_i t` (`t` appended to the Rees ring) and returns the image.
    pub fn substitute_t(&self, p: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.rees_ring, p.ring())?;
        let t_name = self.rees_ring.fresh_name("t");
        let target = self.base_ring.extend(
            &[t_name.as_str()],
            Position::Back,
            self.base_ring.order().extended_back(1),
        )?;
        let t = Polynomial::var_at(&target, self.base_ring.nvars());
        let mut images: Vec<Polynomial> = (0..self.base_ring.nvars())
            .map(|i| Polynomial::var_at(&target, i))
            .collect();
        for a in &self.generators {
            images.push(&a.to_ring(&target)? * &t);
        }
        p.substitute(&images, &target)
    }

    /// Sets `T_j = 1`; the result lives in `A[T_i : i ≠ j]`.
    pub fn dehomogenize(&self, ideal: &Ideal, j: usize) -> Result<Ideal> {
        check_same_ring(&self.rees_ring, ideal.ring())?;
        if j >= self.generators.len() {
            return Err(AlgebraError::InvalidArgument(format!(
                "no Rees variable with index {j}"
            )));
        }
        let names: Vec<String> = self
            .rees_vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, n)| n.clone())
            .collect();
        let chart = rees_ring(&self.base_ring, &names)?;
        let images: Vec<Polynomial> = self
            .rees_ring
            .vars()
            .iter()
            .map(|v| match chart.var_index(v) {
                Some(k) => Polynomial::var_at(&chart, k),
                None => Polynomial::one(&chart),
            })
            .collect();
        let gens = ideal
            .generators()
            .iter()
            .map(|g| g.substitute(&images, &chart))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&chart, gens)?.with_cancel(ideal.cancel_token().clone()))
    }
}

/// Rees presentation with default variable names `T0..Tr`.
pub fn rees_presentation(ideal: &Ideal) -> Result<ReesPresentation> {
    rees_presentation_named(ideal, &[])
}

/// Kernel of `A[T] → A[t]`, `T_i ↦ a_i t`, by eliminating `t` from `⟨T_i - a_i t⟩`.
pub fn rees_presentation_named(ideal: &Ideal, pool: &[String]) -> Result<ReesPresentation> {
    let gens = ideal.generators().to_vec();
    if gens.is_empty() {
        return Err(AlgebraError::EmptyGenerators);
    }
    let base = ideal.ring().clone();
    let names = rees_names(&base, gens.len(), pool);
    let rring = rees_ring(&base, &names)?;
    let t_name = rring.fresh_name("t");
    let work = rring.extend(&[t_name.as_str()], Position::Front, MonomialOrder::Block(1))?;
    let t = Polynomial::var_at(&work, 0);
    let mut eqs = Vec::with_capacity(gens.len());
    for (i, a) in gens.iter().enumerate() {
        let ti = Polynomial::var_at(&work, 1 + base.nvars() + i);
        eqs.push(&ti - &(&a.to_ring(&work)? * &t));
    }
    let gb = buchberger_in(&work, &eqs, ideal.cancel_token())?;
    let kept = gb
        .generators()
        .iter()
        .filter(|g| !g.uses_var(0))
        .map(|g| g.to_ring(&rring))
        .collect::<Result<Vec<_>>>()?;
    let kernel = Ideal::new(&rring, kept)?
        .with_cancel(ideal.cancel_token().clone())
        .reduced()?;
    Ok(ReesPresentation {
        base_ring: base,
        rees_ring: rring,
        generators: gens,
        kernel,
        rees_vars: names,
    })
}

/// A centre `(I, f)`: `f ∈ I` nonzero. `I` keeps the caller's generator order.
#[derive(Debug, Clone)]
pub struct ModificationCentre {
    ideal: Ideal,
    f: Polynomial,
    name_pool: Vec<String>,
}

impl ModificationCentre {
    pub fn new(ideal: Ideal, f: Polynomial) -> Result<Self> {
        check_same_ring(ideal.ring(), f.ring())?;
        if f.is_zero() {
            return Err(AlgebraError::ZeroDivisorElement);
        }
        if ideal.is_zero() {
            return Err(AlgebraError::EmptyGenerators);
        }
        if !ideal.contains(&f)? {
            return Err(AlgebraError::NotInIdeal {
                element: f.to_string(),
                ideal: ideal.to_string(),
            });
        }
        Ok(ModificationCentre {
            ideal,
            f,
            name_pool: Vec::new(),
        })
    }

    /// Preferred Rees variable names, used in order.
    pub fn with_rees_names(mut self, pool: Vec<String>) -> Self {
        self.name_pool = pool;
        self
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn divisor_element(&self) -> &Polynomial {
        &self.f
    }

    pub fn ring(&self) -> &PolyRing {
        self.ideal.ring()
    }

    pub fn name_pool(&self) -> &[String] {
        &self.name_pool
    }

    /// Generators with `f` at index 0: moved there if listed, prepended otherwise.
    pub fn arranged_generators(&self) -> Vec<Polynomial> {
        let mut gens = self.ideal.generators().to_vec();
        match gens.iter().position(|g| g == &self.f) {
            Some(j) => {
                let f = gens.remove(j);
                gens.insert(0, f);
            }
            None => gens.insert(0, self.f.clone()),
        }
        gens
    }

    /// Rees presentation on the caller's generator list.
    pub fn rees(&self) -> Result<ReesPresentation> {
        rees_presentation_named(&self.ideal, &self.name_pool)
    }
}

impl fmt::Display for ModificationCentre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ideal, self.f)
    }
}

/// `A[I/f] ≅ A[T]/(K + ⟨1 - T_0⟩)` with `a_0 = f`.
#[derive(Debug, Clone)]
pub struct ModificationRing {
    centre: ModificationCentre,
    rees: ReesPresentation,
    relations: Ideal,
    direct: Ideal,
}

impl ModificationRing {
    pub fn centre(&self) -> &ModificationCentre {
        &self.centre
    }

    pub fn rees(&self) -> &ReesPresentation {
        &self.rees
    }

    pub fn presentation_ring(&self) -> &PolyRing {
        self.rees.rees_ring()
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    /// `⟨f T_i - a_i⟩ : f^∞`, the kernel of `T_i ↦ a_i/f` computed directly.
    pub fn direct_presentation(&self) -> &Ideal {
        &self.direct
    }

    pub fn distinguished_index(&self) -> usize {
        0
    }

    /// `a_i/f` for each Rees variable.
    pub fn generator_images(&self) -> Result<Vec<Fraction>> {
        self.rees
            .generators()
            .iter()
            .map(|a| Fraction::new(a.clone(), self.centre.f.clone()))
            .collect()
    }

    /// Whether `T_i ↦ a_i/f` sends `p ∈ A[T]` to zero in `Frac(A)`.
    pub fn vanishes_under_substitution(&self, p: &Polynomial) -> Result<bool> {
        let r = &self.rees;
        let nb = r.base_ring().nvars();
        let tdeg = |m: &crate::monomial::Monomial| -> u32 { m.exponents()[nb..].iter().sum() };
        let top = p.terms().iter().map(|(m, _)| tdeg(m)).max().unwrap_or(0);
        let base = r.base_ring();
        let mut acc = Polynomial::zero(base);
        for (m, c) in p.terms() {
            let e = m.exponents();
            let mut term = Polynomial::monomial(
                base,
                crate::monomial::Monomial::from_exponents(&e[..nb]),
                c.clone(),
            );
            for (i, a) in r.generators().iter().enumerate() {
                term = term.try_mul(&a.pow(e[nb + i])?)?;
            }
            term = term.try_mul(&self.centre.f.pow(top - tdeg(m))?)?;
            acc = acc.try_add(&term)?;
        }
        Ok(acc.is_zero())
    }

    pub fn presentation_record(&self) -> Result<PresentationRecord> {
        let images = self.generator_images()?;
        let generator_images = self
            .rees
            .rees_vars()
            .iter()
            .zip(self.rees.generators())
            .zip(images)
            .map(|((v, a), q)| GeneratorImage {
                variable: v.clone(),
                generator: a.to_string(),
                image: q.to_string(),
            })
            .collect();
        Ok(PresentationRecord {
            base_ring: self.rees.base_ring().to_string(),
            rees_vars: self.rees.rees_vars().to_vec(),
            generator_images,
            relation_generators: self
                .relations
                .gb()?
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorImage {
    pub variable: String,
    pub generator: String,
    pub image: String,
}

/// Serializable summary of a [`ModificationRing`]; field order is the key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationRecord {
    pub base_ring: String,
    pub rees_vars: Vec<String>,
    pub generator_images: Vec<GeneratorImage>,
    pub relation_generators: Vec<String>,
}

/// Both presentations of `A[I/f]`, checked against each other.
pub fn modification_ring(centre: &ModificationCentre) -> Result<ModificationRing> {
    let gens = centre.arranged_generators();
    let arranged =
        Ideal::new(centre.ring(), gens)?.with_cancel(centre.ideal.cancel_token().clone());
    let rees = rees_presentation_named(&arranged, &centre.name_pool)?;
    let rring = rees.rees_ring().clone();
    let one = Polynomial::one(&rring);
    let relations = rees
        .kernel()
        .sum(&Ideal::new(&rring, vec![&one - &rees.t_var(0)])?)?;

    let f = centre.f.to_ring(&rring)?;
    let mut eqs = Vec::with_capacity(rees.generators().len());
    for (i, a) in rees.generators().iter().enumerate() {
        eqs.push(&(&f * &rees.t_var(i)) - &a.to_ring(&rring)?);
    }
    let direct = Ideal::new(&rring, eqs)?
        .with_cancel(centre.ideal.cancel_token().clone())
        .saturate_principal(&f)?;
    if !relations.equals(&direct)? {
        return Err(AlgebraError::Internal(format!(
            "Rees-quotient presentation {relations} differs from direct kernel {direct}"
        )));
    }
    Ok(ModificationRing {
        centre: centre.clone(),
        rees,
        relations,
        direct,
    })
}

/// `Σ c_i T_i` for a lift `f = Σ c_i a_i` over the caller's generators.
pub fn divisor_lift(centre: &ModificationCentre, rees: &ReesPresentation) -> Result<Polynomial> {
    let rring = rees.rees_ring();
    if let Some(j) = rees.generators().iter().position(|a| a == &centre.f) {
        return Ok(rees.t_var(j));
    }
    let cofs = lift(&centre.f, rees.generators())?.ok_or_else(|| AlgebraError::NotInIdeal {
        element: centre.f.to_string(),
        ideal: centre.ideal.to_string(),
    })?;
    linear_form(rees, &cofs, rring)
}

fn linear_form(
    rees: &ReesPresentation,
    cofs: &[Polynomial],
    rring: &PolyRing,
) -> Result<Polynomial> {
    let mut l = Polynomial::zero(rring);
    for (i, c) in cofs.iter().enumerate() {
        l = &l + &(&c.to_ring(rring)? * &rees.t_var(i));
    }
    Ok(l)
}

/// `K + ⟨Σ c_i T_i⟩`, the ideal of `Proj(A[It]/ftA[It])`.
pub fn proper_transform(centre: &ModificationCentre) -> Result<Ideal> {
    let rees = centre.rees()?;
    proper_transform_in(centre, &rees)
}

pub fn proper_transform_in(centre: &ModificationCentre, rees: &ReesPresentation) -> Result<Ideal> {
    let rring = rees.rees_ring();
    let l = divisor_lift(centre, rees)?;
    let proper = rees.kernel().sum(&Ideal::new(rring, vec![l.clone()])?)?;

    // a second lift by plain division against the reversed generator list
    let mut reversed: Vec<Polynomial> = rees.generators().to_vec();
    reversed.reverse();
    let (q, r) = centre.f.divide(&reversed)?;
    if r.is_zero() {
        let mut cofs = q;
        cofs.reverse();
        let l2 = linear_form(rees, &cofs, rring)?;
        let other = rees.kernel().sum(&Ideal::new(rring, vec![l2])?)?;
        if !other.equals(&proper)? {
            return Err(AlgebraError::Internal(
                "proper transform depends on the lift".into(),
            ));
        }
    }

    // with f prepended as a_0, the transform is K' + ⟨T_0'⟩; sending T_0' ↦ L
    // must give the same ideal
    if !rees.generators().contains(&centre.f) {
        let mut gens = vec![centre.f.clone()];
        gens.extend(rees.generators().iter().cloned());
        let ext = Ideal::new(centre.ring(), gens)?.with_cancel(centre.ideal.cancel_token().clone());
        let mut pool = vec![rees.rees_ring().fresh_name("S")];
        pool.extend(rees.rees_vars().iter().cloned());
        let wide = rees_presentation_named(&ext, &pool)?;
        let mut images: Vec<Polynomial> = (0..rees.base_ring().nvars())
            .map(|i| Polynomial::var_at(rring, i))
            .collect();
        images.push(l);
        images.extend((0..rees.generators().len()).map(|i| rees.t_var(i)));
        let mapped = wide
            .kernel()
            .generators()
            .iter()
            .map(|g| g.substitute(&images, rring))
            .collect::<Result<Vec<_>>>()?;
        let mut all = mapped;
        all.push(images[rees.base_ring().nvars()].clone());
        if !Ideal::new(rring, all)?.equals(&proper)? {
            return Err(AlgebraError::Internal(
                "proper transform differs from the prepended-generator presentation".into(),
            ));
        }
    }
    Ok(proper)
}

/// `(K + ⟨f⟩) : (I·A[T])^∞`, the closure of the preimage of `div(f) ∖ V(I)`.
pub fn strict_transform(centre: &ModificationCentre) -> Result<Ideal> {
    let rees = centre.rees()?;
    strict_transform_in(centre, &rees)
}

pub fn strict_transform_in(centre: &ModificationCentre, rees: &ReesPresentation) -> Result<Ideal> {
    let rring = rees.rees_ring();
    let total = rees
        .kernel()
        .sum(&Ideal::new(rring, vec![centre.f.to_ring(rring)?])?)?;
    total.saturate(&rees.extended_ideal()?)
}

/// `K + I·A[T]`.
pub fn exceptional_ideal(centre: &ModificationCentre) -> Result<Ideal> {
    let rees = centre.rees()?;
    rees.kernel().sum(&rees.extended_ideal()?)
}

/// Raw and irrelevant-saturated transforms with their comparison.
#[derive(Debug, Clone)]
pub struct TransformPair {
    pub rees: ReesPresentation,
    pub proper: Ideal,
    pub strict: Ideal,
    pub proper_saturated: Ideal,
    pub strict_saturated: Ideal,
    pub equal_as_subschemes: bool,
}

pub fn transforms_equal(centre: &ModificationCentre) -> Result<TransformPair> {
    let rees = centre.rees()?;
    let proper = proper_transform_in(centre, &rees)?;
    let strict = strict_transform_in(centre, &rees)?;
    let irrelevant = rees.irrelevant_ideal();
    let proper_saturated = proper.saturate(&irrelevant)?.reduced()?;
    let strict_saturated = strict.saturate(&irrelevant)?.reduced()?;
    let equal_as_subschemes = proper_saturated.equals(&strict_saturated)?;
    Ok(TransformPair {
        rees,
        proper: proper.reduced()?,
        strict: strict.reduced()?,
        proper_saturated,
        strict_saturated,
        equal_as_subschemes,
    })
}

/// `⟨a_i T_j - a_j T_i : i < j⟩` in `A[T]`, variables named as in [`rees_names`].
pub fn determinantal_ideal(base: &PolyRing, seq: &[Polynomial], pool: &[String]) -> Result<Ideal> {
    for a in seq {
        check_same_ring(base, a.ring())?;
    }
    let names = rees_names(base, seq.len(), pool);
    let rring = rees_ring(base, &names)?;
    let t = |i: usize| Polynomial::var_at(&rring, base.nvars() + i);
    let lifted = seq
        .iter()
        .map(|a| a.to_ring(&rring))
        .collect::<Result<Vec<_>>>()?;
    let mut minors = Vec::new();
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            minors.push(&(&lifted[i] * &t(j)) - &(&lifted[j] * &t(i)));
        }
    }
    Ideal::new(&rring, minors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    /// Smallest `N` with `p f^(N-k) ∈ I^N`.
    Member(u32),
    NonMemberUpTo(u32),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::Member(n) => write!(f, "member at N={n}"),
            Membership::NonMemberUpTo(n) => write!(f, "not a member up to N={n}"),
        }
    }
}

pub const DEFAULT_NMAX: u32 = 20;

/// Semi-decides `p/f^k ∈ A[I/f] = ∪ I^N/f^N` by searching `N = k..=nmax`.
pub fn membership_in_modification(
    centre: &ModificationCentre,
    p: &Polynomial,
    k: u32,
    nmax: u32,
) -> Result<Membership> {
    check_same_ring(centre.ring(), p.ring())?;
    if nmax < k {
        return Err(AlgebraError::InvalidArgument(format!(
            "N_max = {nmax} is below k = {k}"
        )));
    }
    let ring = centre.ring();
    let cancel = centre.ideal.cancel_token().clone();
    let mut power = Ideal::unit(ring).with_cancel(cancel.clone());
    for _ in 0..k {
        power = next_power(&power, &centre.ideal)?;
    }
    let mut lhs = p.clone();
    for n in k..=nmax {
        if n > k {
            power = next_power(&power, &centre.ideal)?;
            lhs = lhs.try_mul(&centre.f)?;
        }
        if power.contains(&lhs)? {
            return Ok(Membership::Member(n));
        }
    }
    Ok(Membership::NonMemberUpTo(nmax))
}

/// `I^N` from the reduced basis of `I^(N-1)` times the generators of `I`.
fn next_power(prev: &Ideal, ideal: &Ideal) -> Result<Ideal> {
    let basis = Ideal::new(prev.ring(), prev.gb()?.generators().to_vec())?
        .with_cancel(prev.cancel_token().clone());
    basis.product(ideal)
}

/// Membership of a fraction `a/b` (any denominator) in `A[I/f]`: `b` must
/// become a power of `f` up to a unit, so this handles `b = c f^k`.
pub fn fraction_in_modification(
    centre: &ModificationCentre,
    h: &Fraction,
    nmax: u32,
) -> Result<Option<Membership>> {
    let (num, k) = match split_f_power(h, &centre.f)? {
        Some(v) => v,
        None => return Ok(None),
    };
    Ok(Some(membership_in_modification(
        centre,
        &num,
        k,
        nmax.max(k),
    )?))
}

/// Rewrites `a/b` as `p/f^k` with `k` minimal when `b` divides a power of `f`.
fn split_f_power(h: &Fraction, f: &Polynomial) -> Result<Option<(Polynomial, u32)>> {
    let mut fk = Polynomial::one(f.ring());
    let top = h.den().total_degree().unwrap_or(0) as u32;
    for k in 0..=top {
        if let Some(cof) = fk.exact_div(h.den())? {
            return Ok(Some((h.num().try_mul(&cof)?, k)));
        }
        fk = fk.try_mul(f)?;
    }
    Ok(None)
}

/// `(⟨f⟩ + fJ, f)`, with redundant generators after `f` dropped.
pub fn centre_from_fractional(j: &FractionalIdeal, f: &Polynomial) -> Result<ModificationCentre> {
    check_same_ring(j.ring(), f.ring())?;
    if f.is_zero() {
        return Err(AlgebraError::ZeroDivisorElement);
    }
    let mut gens = vec![f.clone()];
    let mut cleared = Vec::with_capacity(j.generators().len());
    for g in j.generators() {
        let fp = f.try_mul(g.num())?;
        let q = fp.exact_div(g.den())?.ok_or_else(|| {
            AlgebraError::InvalidArgument(format!(
                "{f} is not a denominator of {j}: {f}*({g}) is not polynomial"
            ))
        })?;
        cleared.push(q.clone());
        gens.push(q);
    }
    let ideal = Ideal::new(j.ring(), gens)?.prune_generators(1)?;
    let centre = ModificationCentre::new(ideal, f.clone())?;
    for q in &cleared {
        if !membership_in_modification(&centre, q, 1, 1)?.is_member() {
            return Err(AlgebraError::Internal(format!(
                "{q}/{f} is not in the modification ring"
            )));
        }
    }
    Ok(centre)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::is_regular_sequence;

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::rational(vars).unwrap()
    }

    fn v(r: &PolyRing, n: &str) -> Polynomial {
        Polynomial::var(r, n).unwrap()
    }

    fn uv() -> Vec<String> {
        vec!["u".into(), "v".into()]
    }

    fn plane_centre(f: Polynomial) -> ModificationCentre {
        let r = f.ring().clone();
        let i = Ideal::new(&r, vec![v(&r, "x"), v(&r, "y")]).unwrap();
        ModificationCentre::new(i, f).unwrap().with_rees_names(uv())
    }

    #[test]
    fn rees_kernel_of_the_maximal_ideal() {
        let r = ring(&["x", "y"]);
        let c = plane_centre(v(&r, "x"));
        let rees = c.rees().unwrap();
        let s = rees.rees_ring();
        let expect = &(&v(s, "x") * &v(s, "v")) - &(&v(s, "y") * &v(s, "u"));
        assert!(rees.kernel().equals(&Ideal::principal(expect)).unwrap());
        for g in rees.kernel().generators() {
            assert!(g.is_homogeneous_in(&rees.t_indices()));
            assert!(rees.substitute_t(g).unwrap().is_zero());
        }
        let p = rees_presentation(&Ideal::principal(v(&r, "x"))).unwrap();
        assert!(p.kernel().is_zero());
        assert_eq!(p.rees_vars(), &["T0"]);
    }

    #[test]
    fn rees_names_skip_collisions() {
        let r = ring(&["u", "T1"]);
        let names = rees_names(&r, 3, &["u".into(), "v".into()]);
        assert_eq!(names, vec!["v", "T1_", "T2"]);
    }

    #[test]
    fn proper_transform_of_x_squared() {
        let r = ring(&["x", "y"]);
        let x = v(&r, "x");
        let c = plane_centre(&x * &x);
        let p = proper_transform(&c).unwrap();
        let s = p.ring().clone();
        let (xs, ys, u, vv) = (v(&s, "x"), v(&s, "y"), v(&s, "u"), v(&s, "v"));
        let expect = Ideal::new(&s, vec![&(&xs * &vv) - &(&ys * &u), &xs * &u]).unwrap();
        assert!(p.equals(&expect).unwrap());

        let strict = strict_transform(&c).unwrap();
        assert!(strict.contains(&(&xs * &u)).unwrap());
        assert!(strict.contains(&(&u * &u)).unwrap());
        assert!(!strict.contains(&u).unwrap());
        assert!(!transforms_equal(&c).unwrap().equal_as_subschemes);
    }

    #[test]
    fn charts_of_x_squared() {
        let r = ring(&["x", "y"]);
        let x = v(&r, "x");
        let c = plane_centre(&x * &x);
        let rees = c.rees().unwrap();
        let strict = strict_transform_in(&c, &rees).unwrap();
        let chart = rees
            .dehomogenize(&strict, 1)
            .unwrap()
            .eliminate(&["x"])
            .unwrap();
        let s = chart.ring().clone();
        assert!(chart
            .equals(&Ideal::principal(v(&s, "u").pow(2).unwrap()))
            .unwrap());
        let proper = proper_transform_in(&c, &rees).unwrap();
        let chart = rees
            .dehomogenize(&proper, 1)
            .unwrap()
            .eliminate(&["x"])
            .unwrap();
        let yu2 = &v(&s, "y") * &v(&s, "u").pow(2).unwrap();
        assert!(chart.equals(&Ideal::principal(yu2)).unwrap());
        let exc = exceptional_ideal(&c).unwrap();
        let chart = rees
            .dehomogenize(&exc, 0)
            .unwrap()
            .eliminate(&["y"])
            .unwrap();
        let s = chart.ring().clone();
        assert!(chart.equals(&Ideal::principal(v(&s, "x"))).unwrap());
    }

    #[test]
    fn regular_sequences_give_equal_transforms() {
        let r = ring(&["x", "y"]);
        let c = plane_centre(v(&r, "x"));
        let pair = transforms_equal(&c).unwrap();
        assert!(pair.equal_as_subschemes);
        let s = pair.rees.rees_ring().clone();
        let xu = Ideal::new(&s, vec![v(&s, "x"), v(&s, "u")]).unwrap();
        assert!(pair.strict_saturated.equals(&xu).unwrap());
        let proper = proper_transform(&c).unwrap();
        assert!(proper.contains(&v(&s, "u")).unwrap());

        let r3 = ring(&["x", "y", "z"]);
        let gens = vec![v(&r3, "x"), v(&r3, "y"), v(&r3, "z")];
        assert!(is_regular_sequence(&r3, &gens).unwrap().regular);
        let c3 =
            ModificationCentre::new(Ideal::new(&r3, gens.clone()).unwrap(), v(&r3, "x")).unwrap();
        assert!(transforms_equal(&c3).unwrap().equal_as_subschemes);
        let det = determinantal_ideal(&r3, &gens, &[]).unwrap();
        assert_eq!(det.generators().len(), 3);
        assert!(det.equals(c3.rees().unwrap().kernel()).unwrap());
        assert!(determinantal_ideal(&r3, &gens[..1], &[]).unwrap().is_zero());
    }

    #[test]
    fn line_bundle_chart() {
        let r = ring(&["z", "w"]);
        let (z, w) = (v(&r, "z"), v(&r, "w"));
        for d in 1..=3 {
            let zd = z.pow(d).unwrap();
            let i = Ideal::new(&r, vec![w.clone(), zd.clone()]).unwrap();
            let m = modification_ring(&ModificationCentre::new(i, zd.clone()).unwrap()).unwrap();
            let s = m.presentation_ring().clone();
            assert_eq!(m.rees().generators()[0], zd);
            let t0 = Polynomial::var(&s, "T0").unwrap();
            let t1 = Polynomial::var(&s, "T1").unwrap();
            let expect = Ideal::new(
                &s,
                vec![
                    &Polynomial::one(&s) - &t0,
                    &v(&s, "w") - &(&zd.to_ring(&s).unwrap() * &t1),
                ],
            )
            .unwrap();
            assert!(m.relations().equals(&expect).unwrap());
            for g in m.relations().gb().unwrap().generators() {
                assert!(m.vanishes_under_substitution(g).unwrap());
            }
        }
    }

    #[test]
    fn trivial_centres() {
        let r = ring(&["x", "y"]);
        let x = v(&r, "x");
        let m = modification_ring(
            &ModificationCentre::new(Ideal::principal(x.clone()), x.clone()).unwrap(),
        )
        .unwrap();
        let s = m.presentation_ring().clone();
        let t0 = Polynomial::var(&s, "T0").unwrap();
        assert!(m
            .relations()
            .equals(&Ideal::principal(&Polynomial::one(&s) - &t0))
            .unwrap());

        let unit = modification_ring(&ModificationCentre::new(Ideal::unit(&r), x.clone()).unwrap())
            .unwrap();
        // f first, then 1: T1 = 1/x
        let s = unit.presentation_ring().clone();
        let t1 = Polynomial::var(&s, "T1").unwrap();
        let xt1 = &(&v(&s, "x") * &t1) - &Polynomial::one(&s);
        assert!(unit.relations().contains(&xt1).unwrap());

        let c = ModificationCentre::new(Ideal::unit(&r), x.clone()).unwrap();
        let strict = strict_transform(&c).unwrap();
        let s = strict.ring().clone();
        assert!(strict.equals(&Ideal::principal(v(&s, "x"))).unwrap());
        assert!(exceptional_ideal(&c).unwrap().is_unit().unwrap());
    }

    #[test]
    fn invalid_centres() {
        let r = ring(&["x", "y"]);
        let i = Ideal::new(&r, vec![v(&r, "x")]).unwrap();
        assert!(matches!(
            ModificationCentre::new(i.clone(), v(&r, "y")),
            Err(AlgebraError::NotInIdeal { .. })
        ));
        assert_eq!(
            ModificationCentre::new(i, Polynomial::zero(&r)).unwrap_err(),
            AlgebraError::ZeroDivisorElement
        );
    }

    #[test]
    fn membership_examples() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let c = plane_centre(x.clone());
        assert_eq!(
            membership_in_modification(&c, &(&y * &y), 2, 20).unwrap(),
            Membership::Member(2)
        );
        assert_eq!(
            membership_in_modification(&c, &Polynomial::one(&r), 1, 10).unwrap(),
            Membership::NonMemberUpTo(10)
        );
        assert_eq!(
            membership_in_modification(&c, &Polynomial::one(&r), 0, 10).unwrap(),
            Membership::Member(0)
        );
        assert!(membership_in_modification(&c, &y, 3, 2).is_err());

        let rz = ring(&["z", "w"]);
        let (z, w) = (v(&rz, "z"), v(&rz, "w"));
        let z2 = &z * &z;
        let c = ModificationCentre::new(Ideal::new(&rz, vec![w.clone(), z2.clone()]).unwrap(), z2)
            .unwrap();
        assert_eq!(
            membership_in_modification(&c, &w, 1, 20).unwrap(),
            Membership::Member(1)
        );
    }

    #[test]
    fn centres_from_fractional_ideals() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let j =
            FractionalIdeal::new(&r, vec![Fraction::new(y.clone(), x.clone()).unwrap()]).unwrap();
        let c = centre_from_fractional(&j, &x).unwrap();
        assert_eq!(c.ideal().generators(), &[x.clone(), y.clone()]);
        let j2 = FractionalIdeal::new(
            &r,
            vec![
                Fraction::new(y.clone(), x.clone()).unwrap(),
                Fraction::new(&y * &y, x.clone()).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            centre_from_fractional(&j2, &x)
                .unwrap()
                .ideal()
                .generators(),
            &[x.clone(), y.clone()]
        );
        assert!(centre_from_fractional(&j, &y).is_err());

        let one = Polynomial::one(&r);
        let j1 = FractionalIdeal::new(&r, vec![Fraction::from_poly(one.clone())]).unwrap();
        let c1 = centre_from_fractional(&j1, &one).unwrap();
        assert!(c1.ideal().is_unit().unwrap());
        assert_eq!(c1.ideal().generators().len(), 1);
    }

    #[test]
    fn presentation_record_lists_images() {
        let r = ring(&["x", "y"]);
        let m = modification_ring(&plane_centre(v(&r, "x"))).unwrap();
        let rec = m.presentation_record().unwrap();
        assert_eq!(rec.rees_vars, vec!["u", "v"]);
        assert_eq!(rec.generator_images[1].image, "y/x");
        assert_eq!(rec.generator_images[0].image, "1");
    }
}
