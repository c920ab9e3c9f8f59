use std::collections::{HashMap, HashSet};
use std::time::Instant;

use reesmod::charts::{
    complement_of_divisor, modify_global, validate_atlas, validate_divisor, validate_sheaf,
    CartierDivisor, ChartAtlas, ChartError, GlobalModification, IdealSheaf, OverlapStatus,
};
use reesmod::ideal::{denominator_ideal, is_regular_sequence};
use reesmod::modification::{
    centre_from_fractional, determinantal_ideal, exceptional_ideal, fraction_in_modification,
    membership_in_modification, modification_ring, proper_transform_in, rees_presentation_named,
    strict_transform_in, transforms_equal, ModificationCentre,
};
use reesmod::{
    AlgebraError, Field, Fraction, FractionalIdeal, Ideal, MonomialOrder, PolyRing, Polynomial,
};

use crate::ast::*;
use crate::diag::{Diagnostic, Span};
use crate::render::{Input, Outcome, Value};

pub const DEFAULT_REES_NAMES: &[&str] = &["u", "v", "w", "p", "q", "r", "s"];

#[derive(Debug, Clone)]
pub enum Binding {
    Ring(PolyRing),
    Poly(Polynomial),
    Ideal(Ideal),
    Frac(FractionalIdeal),
    Centre(ModificationCentre),
    Atlas(ChartAtlas),
    Divisor {
        atlas: String,
        divisor: CartierDivisor,
    },
    Sheaf {
        atlas: String,
        sheaf: IdealSheaf,
    },
}

impl Binding {
    fn kind(&self) -> &'static str {
        match self {
            Binding::Ring(_) => "a ring",
            Binding::Poly(_) => "a polynomial",
            Binding::Ideal(_) => "an ideal",
            Binding::Frac(_) => "a fractional ideal",
            Binding::Centre(_) => "a centre",
            Binding::Atlas(_) => "an atlas",
            Binding::Divisor { .. } => "a divisor",
            Binding::Sheaf { .. } => "an ideal sheaf",
        }
    }

    fn describe(&self) -> String {
        match self {
            Binding::Ring(r) => r.to_string(),
            Binding::Poly(p) => p.to_string(),
            Binding::Ideal(i) => i.to_string(),
            Binding::Frac(j) => j.to_string(),
            Binding::Centre(c) => c.to_string(),
            Binding::Atlas(a) => format!("atlas [{}]", a.names().join(", ")),
            Binding::Divisor { divisor, .. } => list_str(&divisor.equations),
            Binding::Sheaf { sheaf, .. } => list_str(&sheaf.ideals),
        }
    }
}

fn list_str<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// A failed statement: the diagnostic plus whether it signals a bug rather than bad input.
#[derive(Debug)]
pub struct Failure {
    pub diag: Diagnostic,
    pub internal: bool,
}

impl Failure {
    fn at(span: Span, msg: impl Into<String>) -> Self {
        Failure {
            diag: Diagnostic::error(span, msg),
            internal: false,
        }
    }

    fn hint(mut self, h: impl Into<String>) -> Self {
        self.diag = self.diag.with_hint(h);
        self
    }

    fn algebra(span: Span, e: AlgebraError) -> Self {
        let internal = matches!(e, AlgebraError::Internal(_));
        let mut f = Failure::at(span, e.to_string());
        f.internal = internal;
        if let AlgebraError::NotInIdeal { .. } = e {
            f = f.hint("the divisor element of a centre must lie in its ideal");
        }
        f
    }
}

type Res<T> = Result<T, Failure>;

trait At<T> {
    fn at(self, span: Span) -> Res<T>;
}

impl<T> At<T> for reesmod::Result<T> {
    fn at(self, span: Span) -> Res<T> {
        self.map_err(|e| Failure::algebra(span, e))
    }
}

pub struct Interpreter {
    bindings: HashMap<String, Binding>,
    failed: HashSet<String>,
    current: Option<PolyRing>,
    pool: Vec<String>,
    nmax: u32,
    /// Replaces every `QQ` ring; used for the `--field-check` shadow run.
    field_override: Option<Field>,
}

impl Interpreter {
    pub fn new(nmax: u32, field_override: Option<Field>) -> Self {
        Interpreter {
            bindings: HashMap::new(),
            failed: HashSet::new(),
            current: None,
            pool: DEFAULT_REES_NAMES.iter().map(|s| s.to_string()).collect(),
            nmax,
            field_override,
        }
    }

    /// Runs one statement. `Ok(None)` for declarations.
    pub fn run(&mut self, stmt: &Stmt) -> Res<Option<Outcome>> {
        let declared = stmt.declared().cloned();
        if let Some(name) = &declared {
            self.check_fresh(name)?;
        }
        let result = self.run_inner(stmt);
        if result.is_err() {
            if let Some(name) = declared {
                self.failed.insert(name.name);
            }
        }
        result
    }

    fn check_fresh(&self, name: &Ident) -> Res<()> {
        if self.bindings.contains_key(&name.name) || self.failed.contains(&name.name) {
            return Err(
                Failure::at(name.span, format!("`{}` is already declared", name.name))
                    .hint("names are single-assignment; pick a new name"),
            );
        }
        if let Some(r) = &self.current {
            if r.var_index(&name.name).is_some() {
                return Err(Failure::at(
                    name.span,
                    format!("`{}` is a variable of the current ring {r}", name.name),
                ));
            }
        }
        Ok(())
    }

    fn bind(&mut self, name: &Ident, b: Binding) {
        self.bindings.insert(name.name.clone(), b);
    }

    fn run_inner(&mut self, stmt: &Stmt) -> Res<Option<Outcome>> {
        match &stmt.kind {
            StmtKind::Ring { name, spec } => {
                let ring = self.build_ring(spec, name.span)?;
                self.current = Some(ring.clone());
                self.bind(name, Binding::Ring(ring));
            }
            StmtKind::Use { ring } => match self.lookup(ring)? {
                Binding::Ring(r) => self.current = Some(r.clone()),
                other => return Err(kind_error(ring, other, "a ring")),
            },
            StmtKind::Poly { name, value } => {
                let ring = self.current_ring(stmt.span)?;
                let p = self.eval_poly(value, &ring)?;
                self.bind(name, Binding::Poly(p));
            }
            StmtKind::Ideal { name, gens } => {
                let ring = self.current_ring(stmt.span)?;
                let polys = gens
                    .iter()
                    .map(|g| self.eval_poly(g, &ring))
                    .collect::<Res<Vec<_>>>()?;
                let ideal = Ideal::new(&ring, polys).at(stmt.span)?;
                self.bind(name, Binding::Ideal(ideal));
            }
            StmtKind::Frac { name, gens } => {
                let ring = self.current_ring(stmt.span)?;
                let j = self.fractional(gens, &ring, stmt.span)?;
                self.bind(name, Binding::Frac(j));
            }
            StmtKind::Centre {
                name,
                ideal,
                element,
            } => {
                let c = self.centre_parts(ideal, element)?;
                self.bind(name, Binding::Centre(c));
            }
            StmtKind::Rees { names } => {
                let mut seen = HashSet::new();
                for n in names {
                    if !seen.insert(&n.name) {
                        return Err(Failure::at(
                            n.span,
                            format!("duplicate Rees variable name `{}`", n.name),
                        ));
                    }
                }
                self.pool = names.iter().map(|n| n.name.clone()).collect();
            }
            StmtKind::Atlas {
                name,
                charts,
                glues,
            } => {
                let atlas = self.build_atlas(charts, glues)?;
                self.bind(name, Binding::Atlas(atlas));
            }
            StmtKind::Divisor {
                name,
                atlas,
                entries,
            } => {
                let a = self.atlas(atlas)?;
                let slots = chart_slots(&a, entries.iter().map(|(c, _)| c), stmt.span)?;
                let mut equations = Vec::new();
                for (i, k) in slots.iter().enumerate() {
                    equations.push(self.eval_poly(&entries[*k].1, a.chart(i))?);
                }
                self.bind(
                    name,
                    Binding::Divisor {
                        atlas: atlas.name.clone(),
                        divisor: CartierDivisor::new(equations),
                    },
                );
            }
            StmtKind::Sheaf {
                name,
                atlas,
                entries,
            } => {
                let a = self.atlas(atlas)?;
                let slots = chart_slots(&a, entries.iter().map(|(c, _)| c), stmt.span)?;
                let mut ideals = Vec::new();
                for (i, k) in slots.iter().enumerate() {
                    let ring = a.chart(i);
                    let gens = entries[*k]
                        .1
                        .iter()
                        .map(|g| self.eval_poly(g, ring))
                        .collect::<Res<Vec<_>>>()?;
                    ideals.push(Ideal::new(ring, gens).at(entries[*k].0.span)?);
                }
                self.bind(
                    name,
                    Binding::Sheaf {
                        atlas: atlas.name.clone(),
                        sheaf: IdealSheaf::new(ideals),
                    },
                );
            }
            StmtKind::Show { expr } => return self.show(expr).map(Some),
        }
        Ok(None)
    }

    fn build_ring(&self, spec: &RingSpec, span: Span) -> Res<PolyRing> {
        let field = match spec.field {
            FieldSpec::Rational => self.field_override.unwrap_or(Field::Rational),
            FieldSpec::Prime(p) => Field::prime(p).at(span)?,
        };
        let order = match &spec.order {
            None | Some(OrderSpec::Grevlex) => MonomialOrder::Grevlex,
            Some(OrderSpec::Lex) => MonomialOrder::Lex,
            Some(OrderSpec::Block(k)) => MonomialOrder::Block(*k),
            Some(OrderSpec::Weighted(w)) => {
                if w.len() != spec.vars.len() {
                    return Err(Failure::at(
                        span,
                        format!("{} weights for {} variables", w.len(), spec.vars.len()),
                    ));
                }
                MonomialOrder::Weighted(w.clone())
            }
        };
        let vars: Vec<&str> = spec.vars.iter().map(|v| v.name.as_str()).collect();
        PolyRing::new(field, &vars, order).at(span)
    }

    fn build_atlas(&self, charts: &[ChartDecl], glues: &[Glue]) -> Res<ChartAtlas> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for c in charts {
            if !seen.insert(&c.name.name) {
                return Err(Failure::at(
                    c.name.span,
                    format!("duplicate chart `{}`", c.name.name),
                ));
            }
            list.push((c.name.name.clone(), self.build_ring(&c.ring, c.name.span)?));
        }
        let mut atlas = ChartAtlas::new(list);
        let index = |id: &Ident| -> Res<usize> {
            atlas
                .names()
                .iter()
                .position(|n| n == &id.name)
                .ok_or_else(|| Failure::at(id.span, format!("unknown chart `{}`", id.name)))
        };
        let mut glued = Vec::new();
        for g in glues {
            let (i, j) = (index(&g.target)?, index(&g.source)?);
            let target = atlas.chart(i).clone();
            let source = atlas.chart(j).clone();
            let overlap = self.eval_poly(&g.overlap, &target)?;
            let mut images: Vec<Option<Fraction>> = vec![None; source.nvars()];
            for (v, e) in &g.images {
                let k = source.var_index(&v.name).ok_or_else(|| {
                    Failure::at(
                        v.span,
                        format!("`{}` is not a variable of chart {}", v.name, g.source.name),
                    )
                })?;
                if images[k].is_some() {
                    return Err(Failure::at(
                        v.span,
                        format!("`{}` is assigned twice", v.name),
                    ));
                }
                images[k] = Some(self.eval_frac(e, &target)?);
            }
            let images = images
                .into_iter()
                .enumerate()
                .map(|(k, im)| {
                    im.ok_or_else(|| {
                        Failure::at(g.span, format!("no image given for `{}`", source.vars()[k]))
                    })
                })
                .collect::<Res<Vec<_>>>()?;
            glued.push((i, j, overlap, images, g.span));
        }
        for (i, j, overlap, images, span) in glued {
            atlas.add_transition(i, j, overlap, images).at(span)?;
        }
        Ok(atlas)
    }

    fn current_ring(&self, span: Span) -> Res<PolyRing> {
        self.current.clone().ok_or_else(|| {
            Failure::at(span, "no ring declared yet").hint("start with `ring A = QQ[x, y];`")
        })
    }

    fn lookup(&self, id: &Ident) -> Res<&Binding> {
        self.bindings.get(&id.name).ok_or_else(|| {
            if self.failed.contains(&id.name) {
                Failure::at(
                    id.span,
                    format!(
                        "`{}` is unavailable because its declaration failed",
                        id.name
                    ),
                )
            } else {
                Failure::at(id.span, format!("unknown name `{}`", id.name))
            }
        })
    }

    fn atlas(&self, id: &Ident) -> Res<ChartAtlas> {
        match self.lookup(id)? {
            Binding::Atlas(a) => Ok(a.clone()),
            other => Err(kind_error(id, other, "an atlas")),
        }
    }

    fn divisor(&self, e: &Expr, atlas: &Ident) -> Res<CartierDivisor> {
        let id = name_arg(e, "a divisor")?;
        match self.lookup(id)? {
            Binding::Divisor { atlas: a, divisor } => {
                same_atlas(id, a, atlas)?;
                Ok(divisor.clone())
            }
            other => Err(kind_error(id, other, "a divisor")),
        }
    }

    fn sheaf(&self, e: &Expr, atlas: &Ident) -> Res<IdealSheaf> {
        let id = name_arg(e, "an ideal sheaf")?;
        match self.lookup(id)? {
            Binding::Sheaf { atlas: a, sheaf } => {
                same_atlas(id, a, atlas)?;
                Ok(sheaf.clone())
            }
            other => Err(kind_error(id, other, "an ideal sheaf")),
        }
    }

    pub fn eval_frac(&self, e: &Expr, ring: &PolyRing) -> Res<Fraction> {
        let span = e.span();
        match e {
            Expr::Int(s, _) => Ok(Fraction::from_poly(int_poly(ring, s))),
            Expr::Name(id) => {
                if let Some(i) = ring.var_index(&id.name) {
                    return Ok(Fraction::from_poly(Polynomial::var_at(ring, i)));
                }
                match self.lookup(id)? {
                    Binding::Poly(p) => Ok(Fraction::from_poly(p.to_ring(ring).at(span)?)),
                    other => Err(kind_error(id, other, "a polynomial")),
                }
            }
            Expr::Neg(a, _) => {
                let minus = Fraction::from_poly(Polynomial::from_i64(ring, -1));
                self.eval_frac(a, ring)?.mul(&minus).at(span)
            }
            Expr::Bin(op, a, b, _) => {
                let (x, y) = (self.eval_frac(a, ring)?, self.eval_frac(b, ring)?);
                match op {
                    BinOp::Add => x.add(&y),
                    BinOp::Sub => x.add(
                        &y.mul(&Fraction::from_poly(Polynomial::from_i64(ring, -1)))
                            .at(span)?,
                    ),
                    BinOp::Mul => x.mul(&y),
                    BinOp::Div => x.div(&y),
                }
                .at(span)
            }
            Expr::Pow(a, n, _) => self.eval_frac(a, ring)?.pow(*n).at(span),
            Expr::Tuple(..) => Err(Failure::at(span, "expected a polynomial, found a list")),
            Expr::Call(name, ..) => Err(Failure::at(
                span,
                format!(
                    "`{}(...)` is a command; commands only appear directly after `show`",
                    name.name
                ),
            )),
        }
    }

    pub fn eval_poly(&self, e: &Expr, ring: &PolyRing) -> Res<Polynomial> {
        let f = self.eval_frac(e, ring)?;
        f.as_polynomial().ok_or_else(|| {
            Failure::at(e.span(), format!("{f} is not a polynomial"))
                .hint("fractions belong in `frac` declarations")
        })
    }

    /// An ideal from a name, a parenthesized list or a single polynomial.
    fn eval_ideal(&self, e: &Expr, ring: Option<&PolyRing>) -> Res<Ideal> {
        if let Expr::Name(id) = e {
            let is_var = ring
                .or(self.current.as_ref())
                .is_some_and(|r| r.var_index(&id.name).is_some());
            if !is_var {
                match self.lookup(id)? {
                    Binding::Ideal(i) => return Ok(i.clone()),
                    Binding::Poly(p) => return Ok(Ideal::principal(p.clone())),
                    other => return Err(kind_error(id, other, "an ideal")),
                }
            }
        }
        let ring = match ring {
            Some(r) => r.clone(),
            None => self.current_ring(e.span())?,
        };
        let items: Vec<&Expr> = match e {
            Expr::Tuple(items, _) => items.iter().collect(),
            other => vec![other],
        };
        let gens = items
            .iter()
            .map(|g| self.eval_poly(g, &ring))
            .collect::<Res<Vec<_>>>()?;
        Ideal::new(&ring, gens).at(e.span())
    }

    fn fractional(&self, gens: &[Expr], ring: &PolyRing, span: Span) -> Res<FractionalIdeal> {
        let fr = gens
            .iter()
            .map(|g| self.eval_frac(g, ring))
            .collect::<Res<Vec<_>>>()?;
        FractionalIdeal::new(ring, fr).at(span)
    }

    fn eval_fractional(&self, e: &Expr) -> Res<FractionalIdeal> {
        if let Expr::Name(id) = e {
            if let Some(Binding::Frac(j)) = self.bindings.get(&id.name) {
                return Ok(j.clone());
            }
        }
        let ring = self.current_ring(e.span())?;
        match e {
            Expr::Tuple(items, _) => self.fractional(items, &ring, e.span()),
            other => self.fractional(std::slice::from_ref(other), &ring, e.span()),
        }
    }

    fn centre_parts(&self, ideal: &Expr, element: &Expr) -> Res<ModificationCentre> {
        let i = self.eval_ideal(ideal, None)?;
        let f = self.eval_poly(element, i.ring())?;
        Ok(ModificationCentre::new(i, f)
            .at(element.span())?
            .with_rees_names(self.pool.clone()))
    }

    /// A centre name or an `(ideal, f)` pair.
    fn eval_centre(&self, e: &Expr) -> Res<ModificationCentre> {
        match e {
            Expr::Name(id) => match self.lookup(id)? {
                Binding::Centre(c) => Ok(c.clone()),
                other => Err(kind_error(id, other, "a centre")),
            },
            Expr::Tuple(items, _) if items.len() == 2 => self.centre_parts(&items[0], &items[1]),
            other => Err(Failure::at(
                other.span(),
                "expected a centre name or a pair (ideal, f)",
            )),
        }
    }

    fn centre_args(&self, args: &[Expr], span: Span) -> Res<ModificationCentre> {
        match args {
            [c] => self.eval_centre(c),
            [i, f] => self.centre_parts(i, f),
            _ => Err(arity(
                span,
                "a centre, or an ideal and a divisor element",
                args.len(),
            )),
        }
    }

    fn seq_arg(&self, e: &Expr) -> Res<(PolyRing, Vec<Polynomial>)> {
        let i = self.eval_ideal(e, None)?;
        Ok((i.ring().clone(), i.generators().to_vec()))
    }

    fn inputs(&self, args: &[Expr]) -> Vec<Input> {
        args.iter()
            .map(|a| {
                let arg = a.to_string();
                let value = match a {
                    Expr::Name(id) => self.bindings.get(&id.name).map(Binding::describe),
                    _ => None,
                }
                .unwrap_or_else(|| arg.clone());
                Input { arg, value }
            })
            .collect()
    }

    fn show(&self, expr: &Expr) -> Res<Outcome> {
        let (command, args): (String, &[Expr]) = match expr {
            Expr::Call(name, args, _) => (name.name.clone(), args),
            other => ("value".to_string(), std::slice::from_ref(other)),
        };
        let span = expr.span();
        let start = Instant::now();
        let result = match command.as_str() {
            "value" => self.show_value(&args[0])?,
            _ => self.command(&command, args, span)?,
        };
        Ok(Outcome {
            command,
            inputs: self.inputs(args),
            result,
            timing_ms: start.elapsed().as_secs_f64() * 1000.0,
            field_check: None,
        })
    }

    fn show_value(&self, e: &Expr) -> Res<Value> {
        if let Expr::Name(id) = e {
            let is_var = self
                .current
                .as_ref()
                .is_some_and(|r| r.var_index(&id.name).is_some());
            if !is_var {
                return Ok(match self.lookup(id)? {
                    Binding::Ring(r) => Value::record(vec![
                        ("ring", Value::Text(r.to_string())),
                        ("order", Value::Text(r.order().to_string())),
                    ]),
                    Binding::Poly(p) => Value::record(vec![("poly", Value::Poly(p.clone()))]),
                    Binding::Ideal(i) => Value::record(vec![("ideal", Value::Ideal(i.clone()))]),
                    Binding::Frac(j) => Value::record(vec![(
                        "fractional",
                        Value::List(j.generators().iter().cloned().map(Value::Frac).collect()),
                    )]),
                    Binding::Centre(c) => Value::record(vec![
                        ("ideal", Value::Ideal(c.ideal().clone())),
                        ("f", Value::Poly(c.divisor_element().clone())),
                    ]),
                    other => Value::record(vec![("value", Value::Text(other.describe()))]),
                });
            }
        }
        let ring = self.current_ring(e.span())?;
        let f = self.eval_frac(e, &ring)?;
        Ok(Value::record(vec![("value", Value::Frac(f))]))
    }

    fn command(&self, name: &str, args: &[Expr], span: Span) -> Res<Value> {
        match name {
            "gb" => {
                let [i] = args else { return Err(arity(span, "one ideal", args.len())) };
                let i = self.eval_ideal(i, None)?;
                let gb = i.reduced().at(span)?;
                Ok(Value::record(vec![
                    ("order", Value::Text(i.ring().order().to_string())),
                    ("size", Value::Int(gb.generators().len() as u64)),
                    ("gb", Value::Ideal(gb)),
                ]))
            }
            "regular" => {
                let [s] = args else { return Err(arity(span, "one sequence", args.len())) };
                let (ring, seq) = self.seq_arg(s)?;
                let r = is_regular_sequence(&ring, &seq).at(span)?;
                let failing = match r.failing_index {
                    Some(k) => Value::Int(k as u64),
                    None => Value::Label("none".into()),
                };
                Ok(Value::record(vec![
                    ("regular", Value::Bool(r.regular)),
                    ("failing_index", failing),
                ]))
            }
            "rees" => {
                let [i] = args else { return Err(arity(span, "one ideal", args.len())) };
                let i = self.eval_ideal(i, None)?;
                let rees = rees_presentation_named(&i, &self.pool).at(span)?;
                Ok(Value::record(vec![
                    ("rees_vars", labels(rees.rees_vars())),
                    ("kernel", Value::Ideal(rees.kernel().reduced().at(span)?)),
                ]))
            }
            "minors" => {
                let [s] = args else { return Err(arity(span, "one sequence", args.len())) };
                let (ring, seq) = self.seq_arg(s)?;
                let det = determinantal_ideal(&ring, &seq, &self.pool).at(span)?;
                let ideal = Ideal::new(&ring, seq.clone()).at(span)?;
                let kernel = rees_presentation_named(&ideal, &self.pool).at(span)?.kernel().clone();
                let regular = is_regular_sequence(&ring, &seq).at(span)?.regular;
                Ok(Value::record(vec![
                    ("minors", Value::Ideal(det.clone())),
                    ("regular", Value::Bool(regular)),
                    ("equals_rees_kernel", Value::Bool(det.equals(&kernel).at(span)?)),
                ]))
            }
            "modify" => {
                let c = self.centre_args(args, span)?;
                let m = modification_ring(&c).at(span)?;
                let rec = m.presentation_record().at(span)?;
                let images = rec
                    .generator_images
                    .iter()
                    .map(|g| {
                        Value::record(vec![
                            ("variable", Value::Label(g.variable.clone())),
                            ("generator", Value::Text(g.generator.clone())),
                            ("image", Value::Text(g.image.clone())),
                        ])
                    })
                    .collect();
                let relations = m.relations().reduced().at(span)?;
                let direct = relations.equals(m.direct_presentation()).at(span)?;
                Ok(Value::record(vec![
                    ("base_ring", Value::Text(rec.base_ring)),
                    ("rees_vars", labels(&rec.rees_vars)),
                    ("generator_images", Value::List(images)),
                    ("relations", Value::Ideal(relations)),
                    ("matches_direct_kernel", Value::Bool(direct)),
                ]))
            }
            "proper" | "strict" | "exceptional" => {
                let c = self.centre_args(args, span)?;
                let rees = c.rees().at(span)?;
                let ideal = match name {
                    "proper" => proper_transform_in(&c, &rees),
                    "strict" => strict_transform_in(&c, &rees),
                    _ => exceptional_ideal(&c),
                }
                .and_then(|i| i.reduced())
                .at(span)?;
                Ok(Value::record(vec![
                    ("rees_vars", labels(rees.rees_vars())),
                    ("ideal", Value::Ideal(ideal)),
                ]))
            }
            "transforms_equal" => {
                let c = self.centre_args(args, span)?;
                let t = transforms_equal(&c).at(span)?;
                Ok(Value::record(vec![
                    ("rees_vars", labels(t.rees.rees_vars())),
                    ("proper", Value::Ideal(t.proper)),
                    ("strict", Value::Ideal(t.strict)),
                    ("proper_saturated", Value::Ideal(t.proper_saturated)),
                    ("strict_saturated", Value::Ideal(t.strict_saturated)),
                    ("equal", Value::Bool(t.equal_as_subschemes)),
                ]))
            }
            "chart" => self.chart(args, span),
            "member" => self.member(args, span),
            "denominators" => {
                let [j] = args else { return Err(arity(span, "one fractional ideal", args.len())) };
                let j = self.eval_fractional(j)?;
                let d = denominator_ideal(&j).and_then(|d| d.reduced()).at(span)?;
                Ok(Value::record(vec![("ideal", Value::Ideal(d))]))
            }
            "centre_from" => {
                let [j, f] = args else {
                    return Err(arity(span, "a fractional ideal and a denominator", args.len()));
                };
                let j = self.eval_fractional(j)?;
                let f = self.eval_poly(f, j.ring())?;
                let c = centre_from_fractional(&j, &f).at(span)?.with_rees_names(self.pool.clone());
                let mut members = Vec::new();
                for g in j.generators() {
                    let m = fraction_in_modification(&c, g, self.nmax).at(span)?;
                    members.push(Value::record(vec![
                        ("fraction", Value::Frac(g.clone())),
                        ("membership", membership_label(m)),
                    ]));
                }
                Ok(Value::record(vec![
                    ("ideal", Value::Ideal(c.ideal().clone())),
                    ("f", Value::Poly(c.divisor_element().clone())),
                    ("members", Value::List(members)),
                ]))
            }
            "validate" => {
                let (x, rest) = match args {
                    [x, rest @ ..] if rest.len() <= 2 => (name_arg(x, "an atlas")?, rest),
                    _ => return Err(arity(span, "an atlas, optionally a divisor and a sheaf", args.len())),
                };
                let a = self.atlas(x)?;
                let mut fields = vec![];
                let atlas_report = validate_atlas(&a).at(span)?;
                let mut valid = atlas_report.is_valid();
                fields.push(("atlas", Value::Label(atlas_report.to_string())));
                if let Some(d) = rest.first() {
                    let d = self.divisor(d, x)?;
                    let r = validate_divisor(&a, &d).at(span)?;
                    valid &= r.is_valid();
                    fields.push(("divisor", Value::Label(r.to_string())));
                    if let Some(s) = rest.get(1) {
                        let s = self.sheaf(s, x)?;
                        let r = validate_sheaf(&a, &d, &s).at(span)?;
                        valid &= r.is_valid();
                        fields.push(("sheaf", Value::Label(r.to_string())));
                    }
                }
                fields.push(("valid", Value::Bool(valid)));
                Ok(Value::record(fields))
            }
            "modify_global" => {
                let (x, d, s, nmax) = match args {
                    [x, d, s] => (x, d, s, self.nmax),
                    [x, d, s, n] => (x, d, s, int_arg(n)?),
                    _ => return Err(arity(span, "an atlas, a divisor, a sheaf and optionally N_max", args.len())),
                };
                let x = name_arg(x, "an atlas")?;
                let a = self.atlas(x)?;
                let d = self.divisor(d, x)?;
                let s = self.sheaf(s, x)?;
                let g = modify_global(&a, &d, &s, nmax).map_err(|e| chart_failure(span, e))?;
                global_value(&a, &g, span)
            }
            "complement" => {
                let (x, d, nmax) = match args {
                    [x, d] => (x, d, self.nmax),
                    [x, d, n] => (x, d, int_arg(n)?),
                    _ => return Err(arity(span, "an atlas, a divisor and optionally N_max", args.len())),
                };
                let x = name_arg(x, "an atlas")?;
                let a = self.atlas(x)?;
                let d = self.divisor(d, x)?;
                let g = complement_of_divisor(&a, &d, nmax).map_err(|e| chart_failure(span, e))?;
                global_value(&a, &g, span)
            }
            other => Err(Failure::at(span, format!("unknown command `{other}`")).hint(
                "commands: gb, regular, rees, minors, modify, proper, strict, exceptional, transforms_equal, \
                 chart, member, denominators, centre_from, validate, modify_global, complement",
            )),
        }
    }

    /// `chart(kind, C, T[, vars...])`: a transform with `T = 1`, then the listed variables eliminated.
    fn chart(&self, args: &[Expr], span: Span) -> Res<Value> {
        let (kind, c, var, elim) = match args {
            [k, c, v, rest @ ..] => (
                name_arg(k, "proper, strict or exceptional")?,
                c,
                name_arg(v, "a Rees variable")?,
                rest,
            ),
            _ => {
                return Err(arity(
                    span,
                    "a transform kind, a centre and a Rees variable",
                    args.len(),
                ))
            }
        };
        let c = self.eval_centre(c)?;
        let rees = c.rees().at(span)?;
        let ideal = match kind.name.as_str() {
            "proper" => proper_transform_in(&c, &rees),
            "strict" => strict_transform_in(&c, &rees),
            "exceptional" => exceptional_ideal(&c),
            other => {
                return Err(
                    Failure::at(kind.span, format!("unknown transform `{other}`"))
                        .hint("use proper, strict or exceptional"),
                )
            }
        }
        .at(span)?;
        let j = rees
            .rees_vars()
            .iter()
            .position(|v| v == &var.name)
            .ok_or_else(|| {
                Failure::at(var.span, format!("`{}` is not a Rees variable", var.name)).hint(
                    format!("Rees variables here: {}", rees.rees_vars().join(", ")),
                )
            })?;
        let mut local = rees.dehomogenize(&ideal, j).at(span)?;
        let names = elim
            .iter()
            .map(|e| name_arg(e, "a variable to eliminate"))
            .collect::<Res<Vec<_>>>()?;
        if !names.is_empty() {
            let refs: Vec<&str> = names.iter().map(|n| n.name.as_str()).collect();
            local = local.eliminate(&refs).at(span)?;
        }
        Ok(Value::record(vec![
            ("chart", Value::Label(format!("{} = 1", var.name))),
            ("ring", Value::Text(local.ring().to_string())),
            ("ideal", Value::Ideal(local.reduced().at(span)?)),
        ]))
    }

    /// `member(C, p, k[, nmax])` for `p/f^k`, or `member(C, h)` for a fraction `h`.
    fn member(&self, args: &[Expr], span: Span) -> Res<Value> {
        let (c, rest) = match args {
            [c, rest @ ..] if (1..=3).contains(&rest.len()) => (self.eval_centre(c)?, rest),
            _ => {
                return Err(arity(
                    span,
                    "a centre and an element (p, k[, nmax] or a fraction)",
                    args.len(),
                ))
            }
        };
        let ring = c.ring().clone();
        let f = c.divisor_element().clone();
        let (element, result) = match rest {
            [h] => {
                let h = self.eval_frac(h, &ring)?;
                let m = fraction_in_modification(&c, &h, self.nmax).at(span)?;
                (h, membership_label(m))
            }
            [p, k, n @ ..] => {
                let p = self.eval_poly(p, &ring)?;
                let k = int_arg(k)?;
                let nmax = match n {
                    [n] => int_arg(n)?,
                    _ => self.nmax,
                };
                let m = membership_in_modification(&c, &p, k, nmax).at(span)?;
                let den = f.pow(k).at(span)?;
                (Fraction::new(p, den).at(span)?, Value::Label(m.to_string()))
            }
            _ => unreachable!(),
        };
        Ok(Value::record(vec![
            ("element", Value::Frac(element)),
            ("result", result),
        ]))
    }
}

fn membership_label(m: Option<reesmod::modification::Membership>) -> Value {
    Value::Label(match m {
        Some(m) => m.to_string(),
        None => "denominator is not a power of f".into(),
    })
}

fn global_value(atlas: &ChartAtlas, g: &GlobalModification, span: Span) -> Res<Value> {
    let mut charts = Vec::new();
    for (i, m) in g.charts.iter().enumerate() {
        charts.push(Value::record(vec![
            ("chart", Value::Label(atlas.name(i).to_string())),
            ("rees_vars", labels(m.rees().rees_vars())),
            ("relations", Value::Ideal(m.relations().reduced().at(span)?)),
        ]));
    }
    let overlaps = g
        .report
        .entries
        .iter()
        .map(|e| {
            let status = match e.status {
                OverlapStatus::Pass(n) => format!("pass at N={n}"),
                OverlapStatus::Inconclusive(n) => format!("inconclusive up to N={n}"),
            };
            Value::record(vec![
                ("from", Value::Label(atlas.name(e.from).to_string())),
                ("to", Value::Label(atlas.name(e.to).to_string())),
                ("generator", Value::Text(e.generator.clone())),
                ("image", Value::Text(e.image.clone())),
                ("status", Value::Label(status)),
            ])
        })
        .collect();
    Ok(Value::record(vec![
        ("charts", Value::List(charts)),
        ("overlaps", Value::List(overlaps)),
        ("consistent", Value::Bool(g.report.passes())),
        ("inconclusive", Value::Int(g.report.inconclusive() as u64)),
    ]))
}

fn chart_failure(span: Span, e: ChartError) -> Failure {
    match e {
        ChartError::Algebra(a) => Failure::algebra(span, a),
        ChartError::Invalid(r) => Failure::at(span, format!("invalid chart data: {r}"))
            .hint("run `show validate(...)` for the full report"),
    }
}

fn labels(names: &[String]) -> Value {
    Value::List(names.iter().cloned().map(Value::Label).collect())
}

fn kind_error(id: &Ident, found: &Binding, expected: &str) -> Failure {
    Failure::at(
        id.span,
        format!("`{}` is {}, expected {expected}", id.name, found.kind()),
    )
}

fn arity(span: Span, expected: &str, got: usize) -> Failure {
    Failure::at(
        span,
        format!(
            "expected {expected}; got {got} argument{}",
            if got == 1 { "" } else { "s" }
        ),
    )
}

fn name_arg<'a>(e: &'a Expr, what: &str) -> Res<&'a Ident> {
    e.as_name()
        .ok_or_else(|| Failure::at(e.span(), format!("expected {what} (a name)")))
}

fn int_arg(e: &Expr) -> Res<u32> {
    match e {
        Expr::Int(s, span) => s
            .parse()
            .map_err(|_| Failure::at(*span, format!("`{s}` is out of range"))),
        other => Err(Failure::at(
            other.span(),
            "expected a nonnegative integer literal",
        )),
    }
}

fn same_atlas(id: &Ident, declared_on: &str, atlas: &Ident) -> Res<()> {
    if declared_on != atlas.name {
        return Err(Failure::at(
            id.span,
            format!(
                "`{}` is declared on atlas `{declared_on}`, not `{}`",
                id.name, atlas.name
            ),
        ));
    }
    Ok(())
}

/// For each chart, the index of its entry in a divisor/sheaf block.
fn chart_slots<'a>(
    atlas: &ChartAtlas,
    names: impl Iterator<Item = &'a Ident>,
    span: Span,
) -> Res<Vec<usize>> {
    let mut slots = vec![None; atlas.len()];
    for (k, id) in names.enumerate() {
        let i = atlas
            .names()
            .iter()
            .position(|n| n == &id.name)
            .ok_or_else(|| Failure::at(id.span, format!("unknown chart `{}`", id.name)))?;
        if slots[i].is_some() {
            return Err(Failure::at(
                id.span,
                format!("chart `{}` listed twice", id.name),
            ));
        }
        slots[i] = Some(k);
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.ok_or_else(|| Failure::at(span, format!("no entry for chart `{}`", atlas.name(i))))
        })
        .collect()
}

/// Decimal literal as a constant, built in 18-digit chunks.
fn int_poly(ring: &PolyRing, digits: &str) -> Polynomial {
    let field = ring.field();
    let mut acc = field.zero();
    let bytes = digits.as_bytes();
    for chunk in bytes.chunks(18) {
        let s = std::str::from_utf8(chunk).expect("ascii digits");
        let scale = field.from_i64(10i64.pow(chunk.len() as u32));
        acc = field.add(
            &field.mul(&acc, &scale),
            &field.from_i64(s.parse().expect("digits")),
        );
    }
    Polynomial::constant(ring, acc)
}
