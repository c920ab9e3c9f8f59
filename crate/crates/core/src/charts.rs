//! Atlases of affine charts glued along principal opens, Cartier divisors and
//! ideal sheaves given chart-wise, and the global modification computed chart
//! by chart with its gluing checked inside the common fraction field.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::error::{AlgebraError, Result};
use crate::ideal::{Fraction, Ideal};
use crate::modification::{modification_ring, ModificationCentre, ModificationRing};
use crate::monomial::Monomial;
use crate::par;
use crate::poly::{check_same_ring, Polynomial};
use crate::ring::PolyRing;

/// `φ_ij : A_j → (A_i)_{g_ij}`, given by the images of the variables of `A_j`.
#[derive(Debug, Clone)]
pub struct Transition {
    pub g: Polynomial,
    pub images: Vec<Fraction>,
}

#[derive(Debug, Clone)]
pub struct ChartAtlas {
    names: Vec<String>,
    charts: Vec<PolyRing>,
    transitions: BTreeMap<(usize, usize), Transition>,
}

impl ChartAtlas {
    pub fn new(charts: Vec<(String, PolyRing)>) -> Self {
        let (names, charts) = charts.into_iter().unzip();
        ChartAtlas {
            names,
            charts,
            transitions: BTreeMap::new(),
        }
    }

    /// Registers `φ_ij`: `g ∈ A_i`, one image in `Frac(A_i)` per variable of `A_j`.
    pub fn add_transition(
        &mut self,
        i: usize,
        j: usize,
        g: Polynomial,
        images: Vec<Fraction>,
    ) -> Result<()> {
        let (ri, rj) = match (self.charts.get(i), self.charts.get(j)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(AlgebraError::InvalidArgument(format!(
                    "no chart pair ({i}, {j})"
                )))
            }
        };
        if i == j {
            return Err(AlgebraError::InvalidArgument(
                "self-transitions are the identity".into(),
            ));
        }
        check_same_ring(ri, g.ring())?;
        if g.is_zero() {
            return Err(AlgebraError::ZeroDivisorElement);
        }
        if images.len() != rj.nvars() {
            return Err(AlgebraError::InvalidArgument(format!(
                "{} images for the {} variables of chart {}",
                images.len(),
                rj.nvars(),
                self.names[j]
            )));
        }
        for im in &images {
            check_same_ring(ri, im.ring())?;
        }
        self.transitions.insert((i, j), Transition { g, images });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.charts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charts.is_empty()
    }

    pub fn chart(&self, i: usize) -> &PolyRing {
        &self.charts[i]
    }

    pub fn charts(&self) -> &[PolyRing] {
        &self.charts
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn transition(&self, i: usize, j: usize) -> Option<&Transition> {
        self.transitions.get(&(i, j))
    }

    /// Ordered pairs with a registered transition, ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.transitions.keys().copied().collect()
    }

    /// Applies `φ_ij` to a polynomial of `A_j`.
    pub fn transport_poly(&self, i: usize, j: usize, p: &Polynomial) -> Result<Fraction> {
        check_same_ring(&self.charts[j], p.ring())?;
        if i == j {
            return Ok(Fraction::from_poly(p.clone()));
        }
        let t = self.transition(i, j).ok_or_else(|| {
            AlgebraError::InvalidArgument(format!("charts {i} and {j} are not glued"))
        })?;
        eval_at_fractions(p, &t.images, &self.charts[i])
    }

    /// Applies `φ_ij` to an element of `Frac(A_j)`.
    pub fn transport(&self, i: usize, j: usize, h: &Fraction) -> Result<Fraction> {
        let num = self.transport_poly(i, j, h.num())?;
        let den = self.transport_poly(i, j, h.den())?;
        num.div(&den)
    }
}

/// `p(n_1/d_1, ..., n_m/d_m)` over the common denominator `Π d_k^{deg_k p}`.
pub fn eval_at_fractions(
    p: &Polynomial,
    images: &[Fraction],
    target: &PolyRing,
) -> Result<Fraction> {
    if images.len() != p.ring().nvars() {
        return Err(AlgebraError::InvalidArgument(
            "image count does not match the ring".into(),
        ));
    }
    let degs: Vec<u32> = (0..images.len()).map(|k| p.degree_in(k)).collect();
    let mut den = Polynomial::one(target);
    for (im, &e) in images.iter().zip(&degs) {
        den = den.try_mul(&im.den().pow(e)?)?;
    }
    let mut num = Polynomial::zero(target);
    for (m, c) in p.terms() {
        let mut term = Polynomial::monomial(target, Monomial::one(target.nvars()), c.clone());
        for (k, im) in images.iter().enumerate() {
            let e = m.exponents()[k];
            term = term.try_mul(&im.num().pow(e)?)?;
            term = term.try_mul(&im.den().pow(degs[k] - e)?)?;
        }
        num = num.try_add(&term)?;
    }
    Fraction::new(num, den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Location {
    Chart(usize),
    Pair(usize, usize),
    Triple(usize, usize, usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Chart(i) => write!(f, "chart {i}"),
            Location::Pair(i, j) => write!(f, "pair ({i}, {j})"),
            Location::Triple(i, j, k) => write!(f, "triple ({i}, {j}, {k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub location: Location,
    pub message: String,
    pub witness: Option<String>,
}

impl Finding {
    fn new(location: Location, message: impl Into<String>, witness: Option<String>) -> Self {
        Finding {
            location,
            message: message.into(),
            witness,
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)?;
        if let Some(w) = &self.witness {
            write!(f, " [{w}]")?;
        }
        Ok(())
    }
}

/// Outcome of a validation pass. Failures are sorted by location.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: usize,
    pub failures: Vec<Finding>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(parts: Vec<Report>) -> Report {
        let mut out = Report::default();
        for p in parts {
            out.checks += p.checks;
            out.failures.extend(p.failures);
        }
        out.failures.sort_by_key(|a| a.location);
        out
    }

    fn check(&mut self, ok: bool, failure: impl FnOnce() -> Finding) {
        self.checks += 1;
        if !ok {
            self.failures.push(failure());
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid ({} checks)", self.checks);
        }
        write!(
            f,
            "{} of {} checks failed",
            self.failures.len(),
            self.checks
        )?;
        for x in &self.failures {
            write!(f, "; {x}")?;
        }
        Ok(())
    }
}

/// Whether `d` divides a power of `g`; `g^deg(d)` is the largest one needed.
fn divides_power_of(d: &Polynomial, g: &Polynomial) -> Result<bool> {
    let e = d.total_degree().unwrap_or(0) as u32;
    Ok(g.pow(e)?.exact_div(d)?.is_some())
}

/// `a/b ∈ A_g`, i.e. `a ∈ ⟨b⟩ : g^∞`.
pub fn in_localization(h: &Fraction, g: &Polynomial) -> Result<bool> {
    if h.den().is_constant() {
        return Ok(true);
    }
    let sat = Ideal::principal(h.den().clone()).saturate_principal(g)?;
    sat.contains(h.num())
}

pub fn validate_atlas(atlas: &ChartAtlas) -> Result<Report> {
    let pairs = atlas.pairs();
    let per_pair = par::try_map(&pairs, |&(i, j)| -> Result<Report> {
        let mut r = Report::default();
        let t = atlas.transition(i, j).expect("listed pair");
        for (k, im) in t.images.iter().enumerate() {
            let ok = divides_power_of(im.den(), &t.g)?;
            r.check(ok, || {
                Finding::new(
                    Location::Pair(i, j),
                    format!(
                        "denominator of the image of {} is not a power of {}",
                        atlas.chart(j).vars()[k],
                        t.g
                    ),
                    Some(im.to_string()),
                )
            });
        }
        let Some(back) = atlas.transition(j, i) else {
            r.check(false, || {
                Finding::new(Location::Pair(i, j), "no reverse transition", None)
            });
            return Ok(r);
        };
        // φ_ij ∘ φ_ji fixes the variables of A_i
        for (k, x) in atlas.chart(i).vars().iter().enumerate() {
            let there = &back.images[k];
            let round = atlas.transport(i, j, there)?;
            let xi = Fraction::from_poly(Polynomial::var_at(atlas.chart(i), k));
            let ok = round.equals(&xi)?;
            r.check(ok, || {
                Finding::new(
                    Location::Pair(i, j),
                    format!("round trip through chart {} moves {x}", atlas.name(j)),
                    Some(format!("{x} -> {there} -> {round}")),
                )
            });
        }
        Ok(r)
    })?;

    let n = atlas.len();
    let mut triples = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let distinct = i != j && j != k && i != k;
                if distinct
                    && atlas.transition(i, j).is_some()
                    && atlas.transition(j, k).is_some()
                    && atlas.transition(i, k).is_some()
                {
                    triples.push((i, j, k));
                }
            }
        }
    }
    let per_triple = par::try_map(&triples, |&(i, j, k)| -> Result<Report> {
        let mut r = Report::default();
        let direct = &atlas.transition(i, k).expect("listed").images;
        let via = &atlas.transition(j, k).expect("listed").images;
        for (m, y) in atlas.chart(k).vars().iter().enumerate() {
            let composed = atlas.transport(i, j, &via[m])?;
            let ok = composed.equals(&direct[m])?;
            r.check(ok, || {
                Finding::new(
                    Location::Triple(i, j, k),
                    format!("cocycle condition fails on {y}"),
                    Some(format!("{composed} vs {}", direct[m])),
                )
            });
        }
        Ok(r)
    })?;

    let mut parts = per_pair;
    parts.extend(per_triple);
    Ok(Report::merge(parts))
}

/// Local equations `f_i`, one per chart.
#[derive(Debug, Clone)]
pub struct CartierDivisor {
    pub equations: Vec<Polynomial>,
}

impl CartierDivisor {
    pub fn new(equations: Vec<Polynomial>) -> Self {
        CartierDivisor { equations }
    }
}

fn arity_report(atlas: &ChartAtlas, count: usize, what: &str) -> Option<Report> {
    (count != atlas.len()).then(|| Report {
        checks: 1,
        failures: vec![Finding::new(
            Location::Chart(count.min(atlas.len())),
            format!("{what} has {count} entries for {} charts", atlas.len()),
            None,
        )],
    })
}

/// `f_i / φ_ij(f_j)` is a unit of `(A_i)_{g_ij}` on every overlap.
pub fn validate_divisor(atlas: &ChartAtlas, d: &CartierDivisor) -> Result<Report> {
    if let Some(r) = arity_report(atlas, d.equations.len(), "divisor") {
        return Ok(r);
    }
    let mut head = Report::default();
    for (i, f) in d.equations.iter().enumerate() {
        check_same_ring(atlas.chart(i), f.ring())?;
        head.check(!f.is_zero(), || {
            Finding::new(Location::Chart(i), "local equation is zero", None)
        });
    }
    if !head.is_valid() {
        return Ok(head);
    }
    let pairs = atlas.pairs();
    let parts = par::try_map(&pairs, |&(i, j)| -> Result<Report> {
        let mut r = Report::default();
        let g = &atlas.transition(i, j).expect("listed").g;
        let fj = atlas.transport_poly(i, j, &d.equations[j])?;
        if fj.is_zero() {
            r.check(false, || {
                Finding::new(Location::Pair(i, j), "transported equation vanishes", None)
            });
            return Ok(r);
        }
        let ratio = Fraction::from_poly(d.equations[i].clone()).div(&fj)?;
        let ok = in_localization(&ratio, g)? && in_localization(&ratio.inv()?, g)?;
        r.check(ok, || {
            Finding::new(
                Location::Pair(i, j),
                format!("local equations do not differ by a unit on the overlap (g = {g})"),
                Some(format!("ratio {ratio}")),
            )
        });
        Ok(r)
    })?;
    let mut all = vec![head];
    all.extend(parts);
    Ok(Report::merge(all))
}

/// Chart ideals `I_i ⊆ A_i`.
#[derive(Debug, Clone)]
pub struct IdealSheaf {
    pub ideals: Vec<Ideal>,
}

impl IdealSheaf {
    pub fn new(ideals: Vec<Ideal>) -> Self {
        IdealSheaf { ideals }
    }

    pub fn unit(atlas: &ChartAtlas) -> Self {
        IdealSheaf {
            ideals: atlas.charts().iter().map(Ideal::unit).collect(),
        }
    }
}

/// `f_i ∈ I_i`, and generators of `I_j` moved by `φ_ij` lie in `I_i : g_ij^∞`.
pub fn validate_sheaf(atlas: &ChartAtlas, d: &CartierDivisor, s: &IdealSheaf) -> Result<Report> {
    if let Some(r) = arity_report(atlas, s.ideals.len(), "ideal sheaf") {
        return Ok(r);
    }
    if let Some(r) = arity_report(atlas, d.equations.len(), "divisor") {
        return Ok(r);
    }
    let idx: Vec<usize> = (0..atlas.len()).collect();
    let mut parts = par::try_map(&idx, |&i| -> Result<Report> {
        let mut r = Report::default();
        check_same_ring(atlas.chart(i), s.ideals[i].ring())?;
        let ok = s.ideals[i].contains(&d.equations[i])?;
        r.check(ok, || {
            Finding::new(
                Location::Chart(i),
                "chart ideal does not contain the local equation",
                Some(d.equations[i].to_string()),
            )
        });
        Ok(r)
    })?;
    let pairs = atlas.pairs();
    parts.extend(par::try_map(&pairs, |&(i, j)| -> Result<Report> {
        let mut r = Report::default();
        let g = &atlas.transition(i, j).expect("listed").g;
        let local = s.ideals[i].saturate_principal(g)?;
        for a in s.ideals[j].generators() {
            let moved = atlas.transport_poly(i, j, a)?;
            let ok = local.contains(moved.num())?;
            r.check(ok, || {
                Finding::new(
                    Location::Pair(i, j),
                    format!(
                        "generator {a} of chart {} leaves the ideal of chart {}",
                        atlas.name(j),
                        atlas.name(i)
                    ),
                    Some(moved.to_string()),
                )
            });
        }
        Ok(r)
    })?);
    Ok(Report::merge(parts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapStatus {
    Pass(u32),
    Inconclusive(u32),
}

/// Generator `a_k/f_i` of chart `from`, transported into chart `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapCheck {
    pub from: usize,
    pub to: usize,
    pub generator: String,
    pub image: String,
    pub status: OverlapStatus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub entries: Vec<OverlapCheck>,
}

impl ConsistencyReport {
    pub fn passes(&self) -> bool {
        self.entries
            .iter()
            .all(|e| matches!(e.status, OverlapStatus::Pass(_)))
    }

    pub fn inconclusive(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.status, OverlapStatus::Inconclusive(_)))
            .count()
    }
}

#[derive(Debug, Clone)]
pub struct GlobalModification {
    pub charts: Vec<ModificationRing>,
    pub report: ConsistencyReport,
}

#[derive(Debug, Clone, Error)]
pub enum ChartError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid chart data: {0}")]
    Invalid(Report),
}

/// `a/b ∈ (A_g)[I/f]`: some `N ≤ nmax` with `a f^N ∈ (b·I^N) : g^∞`.
pub fn localized_membership(
    centre: &ModificationCentre,
    g: &Polynomial,
    h: &Fraction,
    nmax: u32,
) -> Result<OverlapStatus> {
    let ring = centre.ring();
    check_same_ring(ring, h.ring())?;
    let b = Ideal::principal(h.den().clone());
    let mut power = Ideal::unit(ring);
    let mut lhs = h.num().clone();
    for n in 0..=nmax {
        if n > 0 {
            let basis = Ideal::new(ring, power.gb()?.generators().to_vec())?;
            power = basis.product(centre.ideal())?;
            lhs = lhs.try_mul(centre.divisor_element())?;
        }
        let target = b.product(&power)?.saturate_principal(g)?;
        if target.contains(&lhs)? {
            return Ok(OverlapStatus::Pass(n));
        }
    }
    Ok(OverlapStatus::Inconclusive(nmax))
}

/// Chart-wise `A_i[I_i/f_i]` with the gluing checked on every overlap.
pub fn modify_global(
    atlas: &ChartAtlas,
    d: &CartierDivisor,
    s: &IdealSheaf,
    nmax: u32,
) -> std::result::Result<GlobalModification, ChartError> {
    let report = Report::merge(vec![
        validate_atlas(atlas)?,
        validate_divisor(atlas, d)?,
        validate_sheaf(atlas, d, s)?,
    ]);
    if !report.is_valid() {
        return Err(ChartError::Invalid(report));
    }
    let centres = (0..atlas.len())
        .map(|i| ModificationCentre::new(s.ideals[i].clone(), d.equations[i].clone()))
        .collect::<Result<Vec<_>>>()?;
    let charts = par::try_map(&centres, modification_ring)?;

    // transition (to, from) carries chart `from` into chart `to`
    let pairs = atlas.pairs();
    let per_pair = par::try_map(&pairs, |&(to, from)| -> Result<Vec<OverlapCheck>> {
        let g = &atlas.transition(to, from).expect("listed").g;
        let mut out = Vec::new();
        for h in charts[from].generator_images()? {
            let image = atlas.transport(to, from, &h)?;
            let status = localized_membership(&centres[to], g, &image, nmax)?;
            out.push(OverlapCheck {
                from,
                to,
                generator: h.to_string(),
                image: image.to_string(),
                status,
            });
        }
        Ok(out)
    })?;
    let mut entries: Vec<OverlapCheck> = per_pair.into_iter().flatten().collect();
    entries.sort_by_key(|e| (e.from, e.to));
    Ok(GlobalModification {
        charts,
        report: ConsistencyReport { entries },
    })
}

/// The modification with the unit ideal sheaf: `X ∖ Supp D`, chart-wise `(A_i)_{f_i}`.
pub fn complement_of_divisor(
    atlas: &ChartAtlas,
    d: &CartierDivisor,
    nmax: u32,
) -> std::result::Result<GlobalModification, ChartError> {
    let global = modify_global(atlas, d, &IdealSheaf::unit(atlas), nmax)?;
    for m in &global.charts {
        let rees = m.rees();
        let t0 = rees.rees_vars()[0].clone();
        let reduced = m.relations().eliminate(&[t0.as_str()])?;
        let expect = if rees.generators().len() == 1 {
            Ideal::zero(m.presentation_ring())
        } else {
            let f = m
                .centre()
                .divisor_element()
                .to_ring(m.presentation_ring())?;
            let one = Polynomial::one(m.presentation_ring());
            Ideal::principal(&(&f * &rees.t_var(1)) - &one)
        };
        if !reduced.equals(&expect)? {
            return Err(AlgebraError::Internal(format!(
                "chart ring {} is not the localization at {}",
                m.relations(),
                m.centre().divisor_element()
            ))
            .into());
        }
    }
    Ok(global)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: &Polynomial, d: &Polynomial) -> Fraction {
        Fraction::new(n.clone(), d.clone()).unwrap()
    }

    /// `ℙ¹` with `φ_01 : u ↦ 1/s^a` and `φ_10 : s ↦ 1/u`.
    fn p1(a: u32) -> ChartAtlas {
        let r0 = PolyRing::rational(&["s"]).unwrap();
        let r1 = PolyRing::rational(&["u"]).unwrap();
        let s = Polynomial::var(&r0, "s").unwrap();
        let u = Polynomial::var(&r1, "u").unwrap();
        let mut atlas = ChartAtlas::new(vec![("U0".into(), r0.clone()), ("U1".into(), r1.clone())]);
        atlas
            .add_transition(
                0,
                1,
                s.clone(),
                vec![frac(&Polynomial::one(&r0), &s.pow(a).unwrap())],
            )
            .unwrap();
        atlas
            .add_transition(1, 0, u.clone(), vec![frac(&Polynomial::one(&r1), &u)])
            .unwrap();
        atlas
    }

    fn eq(atlas: &ChartAtlas, i: usize, text: &str) -> Polynomial {
        let r = atlas.chart(i);
        match text {
            "1" => Polynomial::one(r),
            "s-1" => &Polynomial::var(r, "s").unwrap() - &Polynomial::one(r),
            name => Polynomial::var(r, name).unwrap(),
        }
    }

    #[test]
    fn projective_line_atlas() {
        assert!(validate_atlas(&p1(1)).unwrap().is_valid());
        let broken = validate_atlas(&p1(2)).unwrap();
        assert!(!broken.is_valid());
        assert_eq!(broken.failures[0].location, Location::Pair(0, 1));

        let single = ChartAtlas::new(vec![("U".into(), PolyRing::rational(&["x"]).unwrap())]);
        assert!(validate_atlas(&single).unwrap().is_valid());
    }

    #[test]
    fn divisors_on_the_projective_line() {
        let atlas = p1(1);
        let d = CartierDivisor::new(vec![eq(&atlas, 0, "s"), eq(&atlas, 1, "1")]);
        assert!(validate_divisor(&atlas, &d).unwrap().is_valid());
        let zero = CartierDivisor::new(vec![eq(&atlas, 0, "1"), eq(&atlas, 1, "1")]);
        assert!(validate_divisor(&atlas, &zero).unwrap().is_valid());
        // s and u glue to a degree-2 divisor at s = 0
        let two = CartierDivisor::new(vec![eq(&atlas, 0, "s"), eq(&atlas, 1, "u")]);
        assert!(validate_divisor(&atlas, &two).unwrap().is_valid());
        let bad = CartierDivisor::new(vec![eq(&atlas, 0, "s-1"), eq(&atlas, 1, "1")]);
        let report = validate_divisor(&atlas, &bad).unwrap();
        assert_eq!(report.failures.len(), 2);
        assert_eq!(report.failures[0].location, Location::Pair(0, 1));
    }

    #[test]
    fn complement_of_a_point() {
        let atlas = p1(1);
        let d = CartierDivisor::new(vec![eq(&atlas, 0, "s"), eq(&atlas, 1, "1")]);
        let g = complement_of_divisor(&atlas, &d, 10).unwrap();
        assert!(g.report.passes());
        assert_eq!(g.report.inconclusive(), 0);
        assert_eq!(g.charts.len(), 2);
    }

    #[test]
    fn invalid_data_aborts() {
        let atlas = p1(1);
        let bad = CartierDivisor::new(vec![eq(&atlas, 0, "s-1"), eq(&atlas, 1, "1")]);
        assert!(matches!(
            complement_of_divisor(&atlas, &bad, 5),
            Err(ChartError::Invalid(_))
        ));
    }

    #[test]
    fn transport_of_fractions() {
        let atlas = p1(1);
        let r1 = atlas.chart(1);
        let u = Polynomial::var(r1, "u").unwrap();
        let h = frac(&(&u * &u), &(&u + &Polynomial::one(r1)));
        let moved = atlas.transport(0, 1, &h).unwrap();
        let r0 = atlas.chart(0);
        let s = Polynomial::var(r0, "s").unwrap();
        let expect = frac(&Polynomial::one(r0), &(&(&s * &s) + &s));
        assert!(moved.equals(&expect).unwrap());
    }
}
