//! Syntax tree for `.rees` scripts. `Display` prints source that parses back
//! to an equal tree.

use std::fmt;

use crate::diag::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(String, Span),
    Name(Ident),
    Neg(Box<Expr>, Span),
    Bin(BinOp, Box<Expr>, Box<Expr>, Span),
    Pow(Box<Expr>, u32, Span),
    Tuple(Vec<Expr>, Span),
    Call(Ident, Vec<Expr>, Span),
}

impl Expr {
    pub fn span(&self) -> Span {
        match self {
            Expr::Int(_, s) | Expr::Neg(_, s) | Expr::Bin(_, _, _, s) | Expr::Pow(_, _, s) => *s,
            Expr::Tuple(_, s) | Expr::Call(_, _, s) => *s,
            Expr::Name(id) => id.span,
        }
    }

    pub fn as_name(&self) -> Option<&Ident> {
        match self {
            Expr::Name(id) => Some(id),
            _ => None,
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n, _) => f.write_str(n),
            Expr::Name(id) => f.write_str(&id.name),
            Expr::Neg(e, _) => {
                write!(f, "-")?;
                e.fmt_prec(f, 4)
            }
            Expr::Bin(op, a, b, _) => {
                let (sym, p) = match op {
                    BinOp::Add => (" + ", 1),
                    BinOp::Sub => (" - ", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                };
                a.fmt_prec(f, p)?;
                f.write_str(sym)?;
                // left associative: the right operand needs strictly higher precedence
                b.fmt_prec(f, p + 1)
            }
            Expr::Pow(e, n, _) => {
                e.fmt_prec(f, 5)?;
                write!(f, "^{n}")
            }
            Expr::Tuple(items, _) => {
                write!(f, "(")?;
                list(f, items)?;
                write!(f, ")")
            }
            Expr::Call(name, args, _) => {
                write!(f, "{name}(")?;
                list(f, args)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderSpec {
    Lex,
    Grevlex,
    Block(usize),
    Weighted(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub vars: Vec<Ident>,
    pub order: Option<OrderSpec>,
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            FieldSpec::Rational => write!(f, "QQ[")?,
            FieldSpec::Prime(p) => write!(f, "GF({p})[")?,
        }
        list(f, &self.vars)?;
        write!(f, "]")?;
        match &self.order {
            None => Ok(()),
            Some(OrderSpec::Lex) => write!(f, " with order lex"),
            Some(OrderSpec::Grevlex) => write!(f, " with order grevlex"),
            Some(OrderSpec::Block(k)) => write!(f, " with order block({k})"),
            Some(OrderSpec::Weighted(w)) => {
                write!(f, " with order weighted(")?;
                list(f, w)?;
                write!(f, ")")
            }
        }
    }
}

/// `glue target, source by g { var = image; ... };`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Glue {
    pub target: Ident,
    pub source: Ident,
    pub overlap: Expr,
    pub images: Vec<(Ident, Expr)>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartDecl {
    pub name: Ident,
    pub ring: RingSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Ring {
        name: Ident,
        spec: RingSpec,
    },
    Use {
        ring: Ident,
    },
    Poly {
        name: Ident,
        value: Expr,
    },
    Ideal {
        name: Ident,
        gens: Vec<Expr>,
    },
    Frac {
        name: Ident,
        gens: Vec<Expr>,
    },
    Centre {
        name: Ident,
        ideal: Expr,
        element: Expr,
    },
    Rees {
        names: Vec<Ident>,
    },
    Atlas {
        name: Ident,
        charts: Vec<ChartDecl>,
        glues: Vec<Glue>,
    },
    Divisor {
        name: Ident,
        atlas: Ident,
        entries: Vec<(Ident, Expr)>,
    },
    Sheaf {
        name: Ident,
        atlas: Ident,
        entries: Vec<(Ident, Vec<Expr>)>,
    },
    Show {
        expr: Expr,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

impl Stmt {
    /// Name bound by a declaration.
    pub fn declared(&self) -> Option<&Ident> {
        match &self.kind {
            StmtKind::Ring { name, .. }
            | StmtKind::Poly { name, .. }
            | StmtKind::Ideal { name, .. }
            | StmtKind::Frac { name, .. }
            | StmtKind::Centre { name, .. }
            | StmtKind::Atlas { name, .. }
            | StmtKind::Divisor { name, .. }
            | StmtKind::Sheaf { name, .. } => Some(name),
            _ => None,
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Ring { name, spec } => write!(f, "ring {name} = {spec};"),
            StmtKind::Use { ring } => write!(f, "use {ring};"),
            StmtKind::Poly { name, value } => write!(f, "poly {name} = {value};"),
            StmtKind::Ideal { name, gens } => {
                write!(f, "ideal {name} = (")?;
                list(f, gens)?;
                write!(f, ");")
            }
            StmtKind::Frac { name, gens } => {
                write!(f, "frac {name} = (")?;
                list(f, gens)?;
                write!(f, ");")
            }
            StmtKind::Centre {
                name,
                ideal,
                element,
            } => write!(f, "centre {name} = ({ideal}, {element});"),
            StmtKind::Rees { names } => {
                write!(f, "rees (")?;
                list(f, names)?;
                write!(f, ");")
            }
            StmtKind::Atlas {
                name,
                charts,
                glues,
            } => {
                writeln!(f, "atlas {name} {{")?;
                for c in charts {
                    writeln!(f, "  chart {} = {};", c.name, c.ring)?;
                }
                for g in glues {
                    write!(f, "  glue {}, {} by {} {{", g.target, g.source, g.overlap)?;
                    for (v, e) in &g.images {
                        write!(f, " {v} = {e};")?;
                    }
                    writeln!(f, " }};")?;
                }
                write!(f, "}};")
            }
            StmtKind::Divisor {
                name,
                atlas,
                entries,
            } => {
                write!(f, "divisor {name} on {atlas} {{")?;
                for (c, e) in entries {
                    write!(f, " {c}: {e};")?;
                }
                write!(f, " }};")
            }
            StmtKind::Sheaf {
                name,
                atlas,
                entries,
            } => {
                write!(f, "sheaf {name} on {atlas} {{")?;
                for (c, gens) in entries {
                    write!(f, " {c}: (")?;
                    list(f, gens)?;
                    write!(f, ");")?;
                }
                write!(f, " }};")
            }
            StmtKind::Show { expr } => write!(f, "show {expr};"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
