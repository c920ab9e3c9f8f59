//! Ideals of polynomial rings and the operations built on elimination:
//! sums, products, powers, intersections, quotients, saturations, kernels of
//! ring maps, regular-sequence tests and denominator ideals.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{AlgebraError, Result};
use crate::groebner::{buchberger_in, CancelToken, GroebnerBasis};
use crate::monomial::MonomialOrder;
use crate::par;
use crate::poly::{check_same_ring, Polynomial};
use crate::ring::{PolyRing, Position};

pub use crate::fraction::Fraction;

/// An ideal given by generators, with its reduced Gröbner basis computed on
/// first use and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: PolyRing,
    generators: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
    cancel: CancelToken,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &PolyRing, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            check_same_ring(ring, g.ring())?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
            cancel: CancelToken::new(),
        })
    }

    pub fn zero(ring: &PolyRing) -> Self {
        Self::new(ring, Vec::new()).expect("no generators")
    }

    pub fn unit(ring: &PolyRing) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn principal(g: Polynomial) -> Self {
        let ring = g.ring().clone();
        Self::new(&ring, vec![g]).expect("same ring")
    }

    /// Attaches a cancellation token; ideals derived from this one inherit it.
    pub fn with_cancel(mut self, cancel: CancelToken) -> Self {
        self.cancel = cancel;
        self
    }

    pub fn cancel_token(&self) -> &CancelToken {
        &self.cancel
    }

    fn derived(&self, ring: &PolyRing, generators: Vec<Polynomial>) -> Result<Self> {
        Ok(Self::new(ring, generators)?.with_cancel(self.cancel.clone()))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn gb(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = buchberger_in(&self.ring, &self.generators, &self.cancel)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        self.gb()?.contains(p)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.gb()?.normal_form(p)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        check_same_ring(&self.ring, &other.ring)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Equality of ideals by reduced Gröbner basis.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        check_same_ring(&self.ring, &other.ring)?;
        self.gb()?.ideal_equal(other.gb()?)
    }

    /// The same generators viewed in `target` (variables matched by name).
    pub fn to_ring(&self, target: &PolyRing) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_ring(target))
            .collect::<Result<Vec<_>>>()?;
        self.derived(target, gens)
    }

    /// An ideal with the reduced Gröbner basis as its generator list.
    pub fn reduced(&self) -> Result<Ideal> {
        let gb = self.gb()?.clone();
        let ideal = self.derived(&self.ring, gb.generators().to_vec())?;
        let _ = ideal.gb.set(gb);
        Ok(ideal)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        self.derived(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                let p = a.try_mul(b)?;
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        self.derived(&self.ring, gens)
    }

    /// `I^n`, with `I^0 = ⟨1⟩`.
    pub fn power(&self, n: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring).with_cancel(self.cancel.clone());
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I ∩ k[remaining variables]`, returned in the same ring.
    pub fn eliminate(&self, vars: &[&str]) -> Result<Ideal> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let k = names.len();
        let already = self.ring.order().eliminates_prefix(k)
            && self.ring.vars().iter().take(k).cloned().collect::<Vec<_>>() == names;
        let work = if already {
            self.ring.clone()
        } else {
            self.ring.elimination_ring(&names)?
        };
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_ring(&work))
            .collect::<Result<Vec<_>>>()?;
        let gb = buchberger_in(&work, &gens, &self.cancel)?;
        let kept = gb
            .generators()
            .iter()
            .filter(|g| (0..k).all(|i| !g.uses_var(i)))
            .map(|g| g.to_ring(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        self.derived(&self.ring, kept)
    }

    /// Computes in `ring + [w]` (w first, eliminated) and contracts back.
    fn with_auxiliary<F>(&self, build: F) -> Result<Ideal>
    where
        F: FnOnce(&PolyRing, &Polynomial) -> Result<Vec<Polynomial>>,
    {
        let w_name = self.ring.fresh_name("w");
        let work =
            self.ring
                .extend(&[w_name.as_str()], Position::Front, MonomialOrder::Block(1))?;
        let w = Polynomial::var_at(&work, 0);
        let gens = build(&work, &w)?;
        let gb = buchberger_in(&work, &gens, &self.cancel)?;
        let kept = gb
            .generators()
            .iter()
            .filter(|g| !g.uses_var(0))
            .map(|g| g.to_ring(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        self.derived(&self.ring, kept)
    }

    /// `I ∩ J` as `⟨wI, (1 - w)J⟩ ∩ A`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring).with_cancel(self.cancel.clone()));
        }
        self.with_auxiliary(|work, w| {
            let one_minus_w = &Polynomial::one(work) - w;
            let mut gens = Vec::new();
            for g in &self.generators {
                gens.push(w * &g.to_ring(work)?);
            }
            for g in &other.generators {
                gens.push(&one_minus_w * &g.to_ring(work)?);
            }
            Ok(gens)
        })
    }

    /// `(I : g) = {h : hg ∈ I}`, via `(I ∩ ⟨g⟩) / g`.
    pub fn quotient(&self, g: &Polynomial) -> Result<Ideal> {
        check_same_ring(&self.ring, g.ring())?;
        if g.is_zero() {
            return Err(AlgebraError::InvalidArgument(
                "quotient by the zero polynomial".into(),
            ));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.contains(g)? {
            return Ok(Ideal::unit(&self.ring).with_cancel(self.cancel.clone()));
        }
        let meet = self.intersect(&Ideal::principal(g.clone()))?;
        let mut gens = Vec::with_capacity(meet.generators.len());
        for h in &meet.generators {
            let q = h
                .exact_div(g)?
                .ok_or_else(|| AlgebraError::Internal(format!("{g} does not divide {h}")))?;
            gens.push(q);
        }
        self.derived(&self.ring, gens)
    }

    /// `(I : J) = ∩ (I : g_i)` over the generators of `J`.
    pub fn quotient_ideal(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(&self.ring, &other.ring)?;
        let parts = par::try_map(&other.generators, |g| self.quotient(g))?;
        intersect_all(&self.ring, parts, &self.cancel)
    }

    /// `(I : g^∞)` by iterating quotients until the basis stabilizes.
    pub fn saturate_principal(&self, g: &Polynomial) -> Result<Ideal> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(g)?;
            if next.equals(&cur)? {
                return Ok(next);
            }
            cur = next;
        }
    }

    /// `(I : g^∞)` in one elimination: `⟨I, 1 - wg⟩ ∩ A`.
    pub fn saturate_rabinowitsch(&self, g: &Polynomial) -> Result<Ideal> {
        check_same_ring(&self.ring, g.ring())?;
        if g.is_zero() {
            return Err(AlgebraError::InvalidArgument(
                "saturation by the zero polynomial".into(),
            ));
        }
        self.with_auxiliary(|work, w| {
            let mut gens = self
                .generators
                .iter()
                .map(|h| h.to_ring(work))
                .collect::<Result<Vec<_>>>()?;
            gens.push(&Polynomial::one(work) - &(w * &g.to_ring(work)?));
            Ok(gens)
        })
    }

    /// `(I : J^∞) = ∩ (I : g_i^∞)`.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(&self.ring, &other.ring)?;
        if other.is_zero() {
            return Err(AlgebraError::InvalidArgument(
                "saturation by the zero ideal".into(),
            ));
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let parts = par::try_map(&other.generators, |g| self.saturate_principal(g))?;
        intersect_all(&self.ring, parts, &self.cancel)
    }

    /// Drops generators lying in the ideal of the others, scanning from the
    /// back; the first `keep` generators are never dropped.
    pub fn prune_generators(&self, keep: usize) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        let mut i = gens.len();
        while i > keep {
            i -= 1;
            let others: Vec<Polynomial> = gens
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, g)| g.clone())
                .collect();
            let rest = self.derived(&self.ring, others)?;
            if rest.contains(&gens[i])? {
                gens.remove(i);
            }
        }
        self.derived(&self.ring, gens)
    }
}

fn intersect_all(ring: &PolyRing, parts: Vec<Ideal>, cancel: &CancelToken) -> Result<Ideal> {
    let mut it = parts.into_iter();
    let Some(mut acc) = it.next() else {
        return Ok(Ideal::unit(ring).with_cancel(cancel.clone()));
    };
    for p in it {
        acc = acc.intersect(&p)?;
    }
    Ok(acc)
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.ring)
    }
}

/// An algebra map `source → target` given by the images of the source variables.
#[derive(Debug, Clone)]
pub struct RingMap {
    source: PolyRing,
    target: PolyRing,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new(source: &PolyRing, target: &PolyRing, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(AlgebraError::InvalidArgument(format!(
                "{} images for {} source variables",
                images.len(),
                source.nvars()
            )));
        }
        if source.field() != target.field() {
            return Err(AlgebraError::RingMismatch {
                left: format!("{source:?}"),
                right: format!("{target:?}"),
            });
        }
        for im in &images {
            check_same_ring(target, im.ring())?;
        }
        Ok(RingMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(ring: &PolyRing) -> Self {
        let images = (0..ring.nvars())
            .map(|i| Polynomial::var_at(ring, i))
            .collect();
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    pub fn source(&self) -> &PolyRing {
        &self.source
    }

    pub fn target(&self) -> &PolyRing {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.source, p.ring())?;
        p.substitute(&self.images, &self.target)
    }

    /// `ker φ` from the graph ideal `⟨X_i - φ(X_i)⟩` by eliminating the target variables.
    pub fn kernel(&self) -> Result<Ideal> {
        let nt = self.target.nvars();
        let renamed: Vec<String> = self
            .target
            .vars()
            .iter()
            .map(|v| {
                let mut name = format!("{v}'");
                while self.source.var_index(&name).is_some() {
                    name.push('\'');
                }
                name
            })
            .collect();
        let mut vars = renamed.clone();
        vars.extend(self.source.vars().iter().cloned());
        let work = PolyRing::new(self.source.field(), &vars, MonomialOrder::Block(nt))?;
        let target_map: Vec<Option<usize>> =
            (0..work.nvars()).map(|k| (k < nt).then_some(k)).collect();
        let mut gens = Vec::with_capacity(self.images.len());
        for (i, im) in self.images.iter().enumerate() {
            let x = Polynomial::var_at(&work, nt + i);
            gens.push(&x - &im.permute_into(&work, &target_map));
        }
        let gb = buchberger_in(&work, &gens, &CancelToken::new())?;
        let back: Vec<Option<usize>> = (0..self.source.nvars()).map(|i| Some(nt + i)).collect();
        let kept: Vec<Polynomial> = gb
            .generators()
            .iter()
            .filter(|g| (0..nt).all(|i| !g.uses_var(i)))
            .map(|g| g.permute_into(&self.source, &back))
            .collect();
        Ideal::new(&self.source, kept)
    }
}

/// `ker φ` for an algebra map (see [`RingMap::kernel`]).
pub fn kernel_of_map(map: &RingMap) -> Result<Ideal> {
    map.kernel()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularSequence {
    pub regular: bool,
    /// First index where the test fails.
    pub failing_index: Option<usize>,
}

/// Tests each `a_i` for being a non-unit nonzerodivisor modulo `⟨a_0..a_{i-1}⟩`:
/// `⟨a_0..a_i⟩ ≠ ⟨1⟩` and `(⟨a_0..a_{i-1}⟩ : a_i) = ⟨a_0..a_{i-1}⟩`.
pub fn is_regular_sequence(ring: &PolyRing, elems: &[Polynomial]) -> Result<RegularSequence> {
    for e in elems {
        check_same_ring(ring, e.ring())?;
    }
    for i in 0..elems.len() {
        let prev = Ideal::new(ring, elems[..i].to_vec())?;
        let fail = RegularSequence {
            regular: false,
            failing_index: Some(i),
        };
        if elems[i].is_zero() {
            return Ok(fail);
        }
        let with = Ideal::new(ring, elems[..=i].to_vec())?;
        if with.is_unit()? {
            return Ok(fail);
        }
        if !prev.quotient(&elems[i])?.equals(&prev)? {
            return Ok(fail);
        }
    }
    Ok(RegularSequence {
        regular: true,
        failing_index: None,
    })
}

/// A finitely generated `A`-submodule of `Frac(A)`, `A` a polynomial ring.
#[derive(Debug, Clone)]
pub struct FractionalIdeal {
    ring: PolyRing,
    generators: Vec<Fraction>,
}

impl FractionalIdeal {
    pub fn new(ring: &PolyRing, generators: Vec<Fraction>) -> Result<Self> {
        for g in &generators {
            check_same_ring(ring, g.ring())?;
        }
        Ok(FractionalIdeal {
            ring: ring.clone(),
            generators,
        })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Fraction] {
        &self.generators
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// `F = {f ∈ A : fJ ⊆ A} = ∩ ((q_i) : p_i)` over the generators `p_i/q_i`.
pub fn denominator_ideal(j: &FractionalIdeal) -> Result<Ideal> {
    let gens: Vec<&Fraction> = j.generators.iter().filter(|g| !g.is_zero()).collect();
    let parts = par::try_map(&gens, |g| {
        Ideal::principal(g.den().clone()).quotient(g.num())
    })?;
    intersect_all(&j.ring, parts, &CancelToken::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::rational(vars).unwrap()
    }

    fn v(r: &PolyRing, n: &str) -> Polynomial {
        Polynomial::var(r, n).unwrap()
    }

    fn ideal(r: &PolyRing, gens: &[Polynomial]) -> Ideal {
        Ideal::new(r, gens.to_vec()).unwrap()
    }

    #[test]
    fn sum_product_power() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let m = ideal(&r, &[x.clone(), y.clone()]);
        let sq = m.power(2).unwrap();
        assert!(sq.equals(&ideal(&r, &[&x * &x, &x * &y, &y * &y])).unwrap());
        assert!(ideal(&r, std::slice::from_ref(&x))
            .sum(&ideal(&r, std::slice::from_ref(&y)))
            .unwrap()
            .equals(&m)
            .unwrap());
        let prod = m.product(&ideal(&r, std::slice::from_ref(&x))).unwrap();
        assert!(prod.equals(&ideal(&r, &[&x * &x, &x * &y])).unwrap());
        assert!(m.power(0).unwrap().is_unit().unwrap());
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let a = ideal(&r, std::slice::from_ref(&x))
            .intersect(&ideal(&r, std::slice::from_ref(&y)))
            .unwrap();
        assert!(a.equals(&ideal(&r, &[&x * &y])).unwrap());
        let b = ideal(&r, &[&x * &x, y.clone()])
            .intersect(&ideal(&r, std::slice::from_ref(&x)))
            .unwrap();
        assert!(b.equals(&ideal(&r, &[&x * &x, &x * &y])).unwrap());
        let i = ideal(&r, &[&(&x * &x) + &y, &x * &y]);
        assert!(i.intersect(&i).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn quotients() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let ix = ideal(&r, std::slice::from_ref(&x));
        assert!(ix.quotient(&y).unwrap().equals(&ix).unwrap());
        assert!(ideal(&r, &[&x * &x])
            .quotient(&x)
            .unwrap()
            .equals(&ix)
            .unwrap());
        assert!(ix.quotient(&x).unwrap().is_unit().unwrap());
        assert!(ix.quotient(&Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn saturations() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let i = ideal(&r, &[&x * &x]);
        assert!(i
            .saturate(&ideal(&r, std::slice::from_ref(&x)))
            .unwrap()
            .is_unit()
            .unwrap());
        let j = ideal(&r, &[&(&x * &y) * &y, &x * &x]);
        let unit = Ideal::unit(&r);
        assert!(j.saturate(&unit).unwrap().equals(&j).unwrap());
        assert!(j.saturate(&Ideal::zero(&r)).is_err());
        let a = j.saturate_principal(&y).unwrap();
        let b = j.saturate_rabinowitsch(&y).unwrap();
        assert!(a.equals(&b).unwrap());
    }

    #[test]
    fn elimination() {
        let r = ring(&["t", "x", "y", "u", "v"]);
        let (t, x, y, u, vv) = (v(&r, "t"), v(&r, "x"), v(&r, "y"), v(&r, "u"), v(&r, "v"));
        let i = ideal(&r, &[&u - &(&x * &t), &vv - &(&y * &t)]);
        let e = i.eliminate(&["t"]).unwrap();
        let expect = ideal(&r, &[&(&x * &vv) - &(&y * &u)]);
        assert!(e.equals(&expect).unwrap());

        let s = ring(&["x", "y"]);
        let e = ideal(&s, &[&v(&s, "x") - &v(&s, "y")])
            .eliminate(&["y"])
            .unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn kernels() {
        let src = ring(&["u", "v"]);
        let tgt = ring(&["x"]);
        let x = v(&tgt, "x");
        let map = RingMap::new(&src, &tgt, vec![x.pow(2).unwrap(), x.pow(3).unwrap()]).unwrap();
        let k = kernel_of_map(&map).unwrap();
        let (u, vv) = (v(&src, "u"), v(&src, "v"));
        let cusp = &u.pow(3).unwrap() - &vv.pow(2).unwrap();
        assert!(k.equals(&ideal(&src, &[cusp])).unwrap());
        assert!(kernel_of_map(&RingMap::identity(&src)).unwrap().is_zero());

        // u -> xt, v -> yt from QQ[u,v] alone: injective
        let t3 = ring(&["x", "y", "t"]);
        let m = RingMap::new(
            &src,
            &t3,
            vec![&v(&t3, "x") * &v(&t3, "t"), &v(&t3, "y") * &v(&t3, "t")],
        )
        .unwrap();
        assert!(m.kernel().unwrap().is_zero());
    }

    #[test]
    fn regular_sequences() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        assert!(
            is_regular_sequence(&r, &[x.clone(), y.clone()])
                .unwrap()
                .regular
        );
        let bad = is_regular_sequence(&r, &[&x * &x, x.clone()]).unwrap();
        assert_eq!(bad.failing_index, Some(1));
        let bad = is_regular_sequence(&r, &[x.clone(), &x * &y]).unwrap();
        assert_eq!(bad.failing_index, Some(1));
        assert!(is_regular_sequence(&r, &[]).unwrap().regular);
        let unit = is_regular_sequence(&r, &[Polynomial::one(&r)]).unwrap();
        assert_eq!(unit.failing_index, Some(0));
    }

    #[test]
    fn denominator_ideals() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let frac = |n: &Polynomial, d: &Polynomial| Fraction::new(n.clone(), d.clone()).unwrap();
        let j = FractionalIdeal::new(&r, vec![frac(&y, &x)]).unwrap();
        assert!(denominator_ideal(&j)
            .unwrap()
            .equals(&ideal(&r, std::slice::from_ref(&x)))
            .unwrap());
        let one = Polynomial::one(&r);
        let j = FractionalIdeal::new(&r, vec![frac(&one, &one)]).unwrap();
        assert!(denominator_ideal(&j).unwrap().is_unit().unwrap());
        let j = FractionalIdeal::new(&r, vec![frac(&x, &y), frac(&y, &x)]).unwrap();
        assert!(denominator_ideal(&j)
            .unwrap()
            .equals(&ideal(&r, &[&x * &y]))
            .unwrap());
    }

    #[test]
    fn pruning_keeps_the_prefix() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let i = ideal(&r, &[x.clone(), y.clone(), &y * &y])
            .prune_generators(1)
            .unwrap();
        assert_eq!(i.generators(), &[x, y]);
    }
}
