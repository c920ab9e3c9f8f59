//! Buchberger's algorithm with the Gebauer–Möller pair update, normal forms and
//! reduced Gröbner bases.
//!
//! Pairs are selected by the normal strategy (smallest lcm first, ties broken by
//! insertion index), so the run is deterministic for a fixed input. Coprime
//! leading monomials and the chain criterion prune pairs inside the update.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use crate::coeff::Coeff;
use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::poly::{check_same_ring, Polynomial};
use crate::ring::PolyRing;

/// Cooperative cancellation flag checked between S-pair reductions.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, AtomicOrdering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(AtomicOrdering::Relaxed)
    }

    fn check(&self) -> Result<()> {
        if self.is_cancelled() {
            Err(AlgebraError::Cancelled)
        } else {
            Ok(())
        }
    }
}

/// A reduced Gröbner basis: monic, auto-reduced, sorted by ascending leading
/// monomial. For a fixed order this is a canonical form of the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, p.ring())?;
        let refs: Vec<&Polynomial> = self.generators.iter().collect();
        Ok(reduce(p, &refs))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Structural equality of reduced bases; rejects bases over different orders.
    pub fn ideal_equal(&self, other: &GroebnerBasis) -> Result<bool> {
        if self.ring.order() != other.ring.order() {
            return Err(AlgebraError::OrderMismatch(
                self.ring.order().name(),
                other.ring.order().name(),
            ));
        }
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.generators == other.generators)
    }
}

/// Full reduction of `p` by monic polynomials (first match in list order).
pub(crate) fn reduce(p: &Polynomial, basis: &[&Polynomial]) -> Polynomial {
    reduce_tracked(p, None, basis, None).0
}

fn reduce_tracked(
    p: &Polynomial,
    cof: Option<&[Polynomial]>,
    basis: &[&Polynomial],
    basis_cofs: Option<&[&[Polynomial]]>,
) -> (Polynomial, Option<Vec<Polynomial>>) {
    let ring = p.ring().clone();
    let field = ring.field();
    let mut rest = p.clone();
    let mut cof: Option<Vec<Polynomial>> = cof.map(|c| c.to_vec());
    let mut rem = Vec::new();
    while let Some((lm, lc)) = rest.leading_term().cloned() {
        let hit = basis
            .iter()
            .enumerate()
            .find_map(|(k, g)| g.leading_monomial().unwrap().div(&lm).map(|q| (k, q)));
        match hit {
            Some((k, q)) => {
                debug_assert!(field.is_one(basis[k].leading_coeff().unwrap()));
                rest = rest.sub_mul_term(&lc, &q, basis[k]);
                if let (Some(c), Some(bc)) = (cof.as_mut(), basis_cofs) {
                    for (ci, bi) in c.iter_mut().zip(bc[k].iter()) {
                        *ci = ci.sub_mul_term(&lc, &q, bi);
                    }
                }
            }
            None => rem.extend(rest.pop_leading()),
        }
    }
    (Polynomial::from_sorted(&ring, rem), cof)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Working state of one Buchberger run, optionally carrying cofactors that
/// express every basis element in terms of the input generators.
struct Engine {
    ring: PolyRing,
    polys: Vec<Polynomial>,
    cofs: Option<Vec<Vec<Polynomial>>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn push(&mut self, p: Polynomial, cof: Option<Vec<Polynomial>>) {
        let field = self.ring.field();
        let inv = field.inv(p.leading_coeff().unwrap()).unwrap();
        let h = self.polys.len();
        self.polys.push(p.scale(&inv));
        if let (Some(cofs), Some(c)) = (self.cofs.as_mut(), cof) {
            cofs.push(c.iter().map(|x| x.scale(&inv)).collect());
        }
        self.update(h);
    }

    /// Gebauer–Möller update for the new element `h`.
    fn update(&mut self, h: usize) {
        let order = self.ring.order().clone();
        let lm_h = self.lm(h).clone();
        let mut candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair {
                i: g,
                j: h,
                lcm: lm_h.lcm(self.lm(g)),
            })
            .collect();
        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = lm_h.is_coprime(self.lm(p.i));
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        let kept: Vec<Pair> = kept
            .into_iter()
            .filter(|p| !lm_h.is_coprime(self.lm(p.i)))
            .collect();
        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                !(lm_h.divides(&p.lcm)
                    && lm_h.lcm(self.lm(p.i)) != p.lcm
                    && lm_h.lcm(self.lm(p.j)) != p.lcm)
            })
            .collect();
        self.pairs.extend(kept);
        self.pairs.sort_by(|a, b| match order.cmp(&a.lcm, &b.lcm) {
            Ordering::Equal => (a.j, a.i).cmp(&(b.j, b.i)),
            o => o,
        });
        self.active
            .retain(|&g| !lm_h.divides(self.polys[g].leading_monomial().unwrap()));
        self.active.push(h);
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> (Polynomial, Option<Vec<Polynomial>>) {
        let one = self.ring.field().one();
        let qi = self.lm(i).div(lcm).unwrap();
        let qj = self.lm(j).div(lcm).unwrap();
        let s = self.polys[i]
            .mul_term(&qi, &one)
            .sub_mul_term(&one, &qj, &self.polys[j]);
        let cof = self.cofs.as_ref().map(|c| {
            c[i].iter()
                .zip(c[j].iter())
                .map(|(a, b)| a.mul_term(&qi, &one).sub_mul_term(&one, &qj, b))
                .collect::<Vec<_>>()
        });
        (s, cof)
    }

    fn reduce_against_active(
        &self,
        p: &Polynomial,
        cof: Option<&[Polynomial]>,
    ) -> (Polynomial, Option<Vec<Polynomial>>) {
        let basis: Vec<&Polynomial> = self.active.iter().map(|&k| &self.polys[k]).collect();
        let bc: Option<Vec<&[Polynomial]>> = self
            .cofs
            .as_ref()
            .map(|c| self.active.iter().map(|&k| c[k].as_slice()).collect());
        reduce_tracked(p, cof, &basis, bc.as_deref())
    }

    fn run(&mut self, cancel: &CancelToken) -> Result<()> {
        while !self.pairs.is_empty() {
            cancel.check()?;
            let pair = self.pairs.remove(0);
            let (s, cof) = self.spoly(pair.i, pair.j, &pair.lcm);
            let (h, hcof) = self.reduce_against_active(&s, cof.as_deref());
            if !h.is_zero() {
                self.push(h, hcof);
            }
        }
        Ok(())
    }

    /// Interreduces the active set into the reduced basis, ascending.
    fn finish(self) -> (Vec<Polynomial>, Option<Vec<Vec<Polynomial>>>) {
        let field = self.ring.field();
        let order = self.ring.order().clone();
        let mut idx = self.active.clone();
        idx.sort_by(|&a, &b| order.cmp(self.lm(a), self.lm(b)));
        let mut out = Vec::with_capacity(idx.len());
        let mut out_cofs = self.cofs.as_ref().map(|_| Vec::with_capacity(idx.len()));
        for (pos, &k) in idx.iter().enumerate() {
            let others: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != pos)
                .map(|(_, &o)| o)
                .collect();
            let p = &self.polys[k];
            let lead = Polynomial::from_terms(&self.ring, vec![p.leading_term().unwrap().clone()]);
            let tail = p - &lead;
            let basis: Vec<&Polynomial> = others.iter().map(|&o| &self.polys[o]).collect();
            let bc: Option<Vec<&[Polynomial]>> = self
                .cofs
                .as_ref()
                .map(|c| others.iter().map(|&o| c[o].as_slice()).collect());
            let (t, tc) = reduce_tracked(
                &tail,
                self.cofs.as_ref().map(|c| c[k].as_slice()),
                &basis,
                bc.as_deref(),
            );
            let g = &lead + &t;
            debug_assert!(field.is_one(g.leading_coeff().unwrap()));
            out.push(g);
            if let (Some(oc), Some(tc)) = (out_cofs.as_mut(), tc) {
                oc.push(tc);
            }
        }
        (out, out_cofs)
    }
}

fn prepare(gens: &[Polynomial]) -> Result<Option<PolyRing>> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    for g in gens {
        check_same_ring(first.ring(), g.ring())?;
    }
    Ok(Some(first.ring().clone()))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial]) -> Result<GroebnerBasis> {
    buchberger_cancellable(gens, &CancelToken::new())
}

pub fn buchberger_cancellable(gens: &[Polynomial], cancel: &CancelToken) -> Result<GroebnerBasis> {
    let Some(ring) = prepare(gens)? else {
        return Err(AlgebraError::EmptyGenerators);
    };
    buchberger_in(&ring, gens, cancel)
}

/// Like [`buchberger_cancellable`] but accepts an empty list (the zero ideal).
pub fn buchberger_in(
    ring: &PolyRing,
    gens: &[Polynomial],
    cancel: &CancelToken,
) -> Result<GroebnerBasis> {
    for g in gens {
        check_same_ring(ring, g.ring())?;
    }
    let nonzero: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.iter().any(|g| g.is_constant()) {
        let gb = GroebnerBasis {
            ring: ring.clone(),
            generators: vec![Polynomial::one(ring)],
        };
        record(&gb);
        return Ok(gb);
    }
    let mut engine = Engine {
        ring: ring.clone(),
        polys: Vec::new(),
        cofs: None,
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in nonzero {
        cancel.check()?;
        let (h, _) = engine.reduce_against_active(g, None);
        if !h.is_zero() {
            engine.push(h, None);
        }
    }
    engine.run(cancel)?;
    let (generators, _) = engine.finish();
    let gb = GroebnerBasis {
        ring: ring.clone(),
        generators,
    };
    record(&gb);
    Ok(gb)
}

/// Expresses `f` as `Σ c_i gens[i]` by dividing it against the reduced basis
/// of `⟨gens⟩` and pulling the quotients back through tracked cofactors.
/// `None` when `f` is not in the ideal.
pub fn lift(f: &Polynomial, gens: &[Polynomial]) -> Result<Option<Vec<Polynomial>>> {
    let ring = f.ring().clone();
    for g in gens {
        check_same_ring(&ring, g.ring())?;
    }
    if f.is_zero() {
        return Ok(Some(vec![Polynomial::zero(&ring); gens.len()]));
    }
    let n = gens.len();
    let mut engine = Engine {
        ring: ring.clone(),
        polys: Vec::new(),
        cofs: Some(Vec::new()),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut unit = vec![Polynomial::zero(&ring); n];
        unit[i] = Polynomial::one(&ring);
        let (h, hc) = engine.reduce_against_active(g, Some(&unit));
        if !h.is_zero() {
            engine.push(h, hc);
        }
    }
    engine.run(&CancelToken::new())?;
    let (basis, cofs) = engine.finish();
    let cofs = cofs.expect("tracking enabled");
    let (quotients, rem) = f.divide(&basis)?;
    if !rem.is_zero() {
        return Ok(None);
    }
    let mut lift = vec![Polynomial::zero(&ring); n];
    for (q, c) in quotients.iter().zip(cofs.iter()) {
        if q.is_zero() {
            continue;
        }
        for (l, cj) in lift.iter_mut().zip(c.iter()) {
            *l = &*l + &(q * cj);
        }
    }
    let check = lift
        .iter()
        .zip(gens)
        .fold(Polynomial::zero(&ring), |acc, (c, g)| &acc + &(c * g));
    if &check != f {
        return Err(AlgebraError::Internal(
            "lift does not reproduce the element".into(),
        ));
    }
    Ok(Some(lift))
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    check_same_ring(f.ring(), g.ring())?;
    let field = f.ring().field();
    let (Some((mf, cf)), Some((mg, cg))) = (f.leading_term(), g.leading_term()) else {
        return Ok(Polynomial::zero(f.ring()));
    };
    let lcm = mf.lcm(mg);
    let a: Coeff = field.inv(cf)?;
    let b: Coeff = field.inv(cg)?;
    let fs = f.mul_term(&mf.div(&lcm).unwrap(), &a);
    Ok(fs.sub_mul_term(&b, &mg.div(&lcm).unwrap(), g))
}

/// Buchberger's criterion checked on every pair, without any pruning.
pub fn is_groebner_basis(gens: &[Polynomial]) -> Result<bool> {
    let monic: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    let refs: Vec<&Polynomial> = monic.iter().collect();
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            let s = s_polynomial(&monic[i], &monic[j])?;
            if !reduce(&s, &refs).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks monic, auto-reduced and ascending on top of [`is_groebner_basis`].
pub fn is_reduced_groebner_basis(gb: &GroebnerBasis) -> Result<bool> {
    let gens = gb.generators();
    let field = gb.ring().field();
    let order = gb.ring().order();
    for (i, g) in gens.iter().enumerate() {
        if !field.is_one(g.leading_coeff().unwrap()) {
            return Ok(false);
        }
        for (j, h) in gens.iter().enumerate() {
            if i != j {
                let lm = h.leading_monomial().unwrap();
                if g.terms().iter().any(|(m, _)| lm.divides(m)) {
                    return Ok(false);
                }
            }
        }
        if i > 0
            && order.cmp(
                gens[i - 1].leading_monomial().unwrap(),
                g.leading_monomial().unwrap(),
            ) != Ordering::Less
        {
            return Ok(false);
        }
    }
    is_groebner_basis(gens)
}

#[cfg(feature = "verify-gb")]
mod stats {
    use std::sync::atomic::{AtomicU64, Ordering};
    pub static PRODUCED: AtomicU64 = AtomicU64::new(0);
    pub static VERIFIED: AtomicU64 = AtomicU64::new(0);

    pub fn record(gb: &super::GroebnerBasis) {
        PRODUCED.fetch_add(1, Ordering::Relaxed);
        let ok = super::is_reduced_groebner_basis(gb).unwrap_or(false);
        assert!(
            ok,
            "Buchberger produced a non-reduced or incomplete basis: {:?}",
            gb.generators()
        );
        VERIFIED.fetch_add(1, Ordering::Relaxed);
    }
}

#[cfg(feature = "verify-gb")]
fn record(gb: &GroebnerBasis) {
    stats::record(gb)
}

#[cfg(not(feature = "verify-gb"))]
fn record(_gb: &GroebnerBasis) {}

/// `(produced, verified)` basis counts since process start. Only counted with
/// the `verify-gb` feature; otherwise `(0, 0)`.
pub fn verification_counts() -> (u64, u64) {
    #[cfg(feature = "verify-gb")]
    {
        use std::sync::atomic::Ordering;
        (
            stats::PRODUCED.load(Ordering::Relaxed),
            stats::VERIFIED.load(Ordering::Relaxed),
        )
    }
    #[cfg(not(feature = "verify-gb"))]
    {
        (0, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use crate::monomial::MonomialOrder;

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::rational(vars).unwrap()
    }

    fn v(r: &PolyRing, n: &str) -> Polynomial {
        Polynomial::var(r, n).unwrap()
    }

    #[test]
    fn coordinate_ideal_sorted_ascending() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&[v(&r, "x"), v(&r, "y")]).unwrap();
        assert_eq!(gb.generators(), &[v(&r, "y"), v(&r, "x")]);
    }

    #[test]
    fn single_binomial_is_its_own_basis() {
        let r = ring(&["x", "y", "u", "v"]);
        let b = &(&v(&r, "x") * &v(&r, "v")) - &(&v(&r, "y") * &v(&r, "u"));
        let gb = buchberger(std::slice::from_ref(&b)).unwrap();
        assert_eq!(gb.len(), 1);
        assert!(crate::poly::associated(&gb.generators()[0], &b));
    }

    #[test]
    fn sum_and_difference_of_squares() {
        let r = ring(&["x", "y"]);
        let (x2, y2) = (v(&r, "x").pow(2).unwrap(), v(&r, "y").pow(2).unwrap());
        let gb = buchberger(&[&x2 + &y2, &x2 - &y2]).unwrap();
        assert_eq!(gb.generators(), &[y2, x2]);
    }

    #[test]
    fn normal_form_examples() {
        let r = PolyRing::new(Field::Rational, &["x", "y", "u", "v"], MonomialOrder::Lex).unwrap();
        let (x, y, u, vv) = (v(&r, "x"), v(&r, "y"), v(&r, "u"), v(&r, "v"));
        let b = &(&x * &vv) - &(&y * &u);
        let gb = buchberger(std::slice::from_ref(&b)).unwrap();
        let nf = gb.normal_form(&(&(&x * &x) * &vv)).unwrap();
        assert_eq!(nf, &(&x * &y) * &u);
        assert!(gb.normal_form(&b).unwrap().is_zero());

        let rx = ring(&["x"]);
        let gbx = buchberger(&[v(&rx, "x").pow(2).unwrap()]).unwrap();
        assert_eq!(
            gbx.normal_form(&Polynomial::one(&rx)).unwrap(),
            Polynomial::one(&rx)
        );
    }

    #[test]
    fn ideal_equality() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let a = buchberger(&[x.clone(), y.clone()]).unwrap();
        let b = buchberger(&[y.clone(), &x + &y]).unwrap();
        assert!(a.ideal_equal(&b).unwrap());
        let c = buchberger(&[x.pow(2).unwrap()]).unwrap();
        let d = buchberger(std::slice::from_ref(&x)).unwrap();
        assert!(!c.ideal_equal(&d).unwrap());

        let lex = r.with_order(MonomialOrder::Lex).unwrap();
        let e = buchberger(&[Polynomial::var(&lex, "x").unwrap()]).unwrap();
        assert!(matches!(
            d.ideal_equal(&e),
            Err(AlgebraError::OrderMismatch(..))
        ));
    }

    #[test]
    fn units_and_empty_input() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&[v(&r, "x"), &v(&r, "x") + &Polynomial::one(&r)]).unwrap();
        assert!(gb.is_unit());
        let z = buchberger_in(&r, &[], &CancelToken::new()).unwrap();
        assert!(z.is_empty());
    }

    #[test]
    fn cancellation_is_honoured() {
        let r = ring(&["x", "y", "z"]);
        let (x, y, z) = (v(&r, "x"), v(&r, "y"), v(&r, "z"));
        let t = CancelToken::new();
        t.cancel();
        let gens = [&(&x * &y) - &z, &(&y * &z) - &x, &(&z * &x) - &y];
        assert_eq!(
            buchberger_cancellable(&gens, &t),
            Err(AlgebraError::Cancelled)
        );
    }

    #[test]
    fn cyclic_like_system_is_a_reduced_basis() {
        let r = ring(&["x", "y", "z"]);
        let (x, y, z) = (v(&r, "x"), v(&r, "y"), v(&r, "z"));
        let gens = [
            &(&x + &y) + &z,
            &(&(&x * &y) + &(&y * &z)) + &(&z * &x),
            &(&(&x * &y) * &z) - &Polynomial::one(&r),
        ];
        let gb = buchberger(&gens).unwrap();
        assert!(is_reduced_groebner_basis(&gb).unwrap());
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn lift_reexpresses_against_the_listed_generators() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let f = x.pow(2).unwrap();
        let l = lift(&f, &[x.clone(), y.clone()]).unwrap().unwrap();
        assert_eq!(l, vec![x.clone(), Polynomial::zero(&r)]);
        assert!(lift(&Polynomial::one(&r), &[x.clone(), y.clone()])
            .unwrap()
            .is_none());

        let g = &(&x * &y) + &y.pow(3).unwrap();
        let gens = [&x + &y, &x - &y.pow(2).unwrap()];
        let l = lift(&g, &gens);
        if let Ok(Some(c)) = l {
            let back = &(&c[0] * &gens[0]) + &(&c[1] * &gens[1]);
            assert_eq!(back, g);
        }
    }

    #[test]
    fn works_over_prime_fields() {
        let r = PolyRing::new(
            Field::prime(7).unwrap(),
            &["x", "y"],
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let gb = buchberger(&[&(&x * &x) - &y, &(&x * &y) - &Polynomial::one(&r)]).unwrap();
        assert!(is_reduced_groebner_basis(&gb).unwrap());
    }
}
