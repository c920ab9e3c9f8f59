use crate::ast::*;
use crate::diag::{Diagnostic, Span};
use crate::lexer::{lex, Tok, Token};

/// Parses a script, collecting at most one diagnostic per statement. After an
/// error the parser skips to the next `;` outside braces and carries on.
pub fn parse(src: &str) -> (Script, Vec<Diagnostic>) {
    let (toks, mut diags) = lex(src);
    let mut p = Parser { toks, pos: 0 };
    let mut script = Script::default();
    while !p.at(&Tok::Eof) {
        let start = p.pos;
        match p.stmt() {
            Ok(s) => script.stmts.push(s),
            Err(d) => {
                diags.push(d);
                p.recover(start);
            }
        }
    }
    diags.sort_by_key(|d| d.offset);
    (script, diags)
}

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

const KEYWORDS: &[&str] = &[
    "ring", "use", "poly", "ideal", "frac", "centre", "rees", "atlas", "divisor", "sheaf", "show",
];

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn at(&self, t: &Tok) -> bool {
        &self.peek().tok == t
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        let t = self.peek();
        Diagnostic::error(
            t.span,
            format!("expected {what}, found {}", t.tok.describe()),
        )
    }

    fn expect(&mut self, t: Tok, what: &str) -> PResult<Span> {
        if self.at(&t) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        match &self.peek().tok {
            Tok::Ident(name) => {
                let name = name.clone();
                let span = self.bump().span;
                Ok(Ident { name, span })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Span> {
        match &self.peek().tok {
            Tok::Ident(name) if name == kw => Ok(self.bump().span),
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn integer<T: std::str::FromStr>(&mut self, what: &str) -> PResult<T> {
        match &self.peek().tok {
            Tok::Int(s) => {
                let span = self.peek().span;
                let v = s.parse().map_err(|_| {
                    Diagnostic::error(span, format!("{what} `{s}` is out of range"))
                })?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn recover(&mut self, start: usize) {
        let mut depth = self.toks[start..self.pos]
            .iter()
            .fold(0i32, |d, t| match t.tok {
                Tok::LBrace => d + 1,
                Tok::RBrace => d - 1,
                _ => d,
            });
        loop {
            match self.bump().tok {
                Tok::Eof => return,
                Tok::LBrace => depth += 1,
                Tok::RBrace => depth -= 1,
                Tok::Semi if depth <= 0 => return,
                _ => {}
            }
        }
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let start = self.peek().span;
        let kw = match &self.peek().tok {
            Tok::Ident(k) if KEYWORDS.contains(&k.as_str()) => k.clone(),
            _ => return Err(self.unexpected("a declaration or `show`")),
        };
        self.bump();
        let kind = match kw.as_str() {
            "ring" => {
                let name = self.ident("a ring name")?;
                self.expect(Tok::Eq, "`=`")?;
                StmtKind::Ring {
                    name,
                    spec: self.ring_spec()?,
                }
            }
            "use" => StmtKind::Use {
                ring: self.ident("a ring name")?,
            },
            "poly" => {
                let name = self.ident("a name")?;
                self.expect(Tok::Eq, "`=`")?;
                StmtKind::Poly {
                    name,
                    value: self.expr()?,
                }
            }
            "ideal" | "frac" => {
                let name = self.ident("a name")?;
                self.expect(Tok::Eq, "`=`")?;
                self.expect(Tok::LParen, "`(`")?;
                let gens = self.expr_list(&Tok::RParen)?;
                self.expect(Tok::RParen, "`)`")?;
                if kw == "ideal" {
                    StmtKind::Ideal { name, gens }
                } else {
                    StmtKind::Frac { name, gens }
                }
            }
            "centre" => {
                let name = self.ident("a name")?;
                self.expect(Tok::Eq, "`=`")?;
                self.expect(Tok::LParen, "`(`")?;
                let ideal = self.expr()?;
                self.expect(Tok::Comma, "`,` between the ideal and the divisor element")?;
                let element = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                StmtKind::Centre {
                    name,
                    ideal,
                    element,
                }
            }
            "rees" => {
                self.expect(Tok::LParen, "`(`")?;
                let mut names = vec![self.ident("a variable name")?];
                while self.eat(&Tok::Comma) {
                    names.push(self.ident("a variable name")?);
                }
                self.expect(Tok::RParen, "`)`")?;
                StmtKind::Rees { names }
            }
            "atlas" => self.atlas()?,
            "divisor" => {
                let (name, atlas) = self.block_head()?;
                let mut entries = Vec::new();
                while !self.at(&Tok::RBrace) {
                    let chart = self.ident("a chart name")?;
                    self.expect(Tok::Colon, "`:`")?;
                    entries.push((chart, self.expr()?));
                    self.expect(Tok::Semi, "`;`")?;
                }
                self.bump();
                StmtKind::Divisor {
                    name,
                    atlas,
                    entries,
                }
            }
            "sheaf" => {
                let (name, atlas) = self.block_head()?;
                let mut entries = Vec::new();
                while !self.at(&Tok::RBrace) {
                    let chart = self.ident("a chart name")?;
                    self.expect(Tok::Colon, "`:`")?;
                    self.expect(Tok::LParen, "`(`")?;
                    let gens = self.expr_list(&Tok::RParen)?;
                    self.expect(Tok::RParen, "`)`")?;
                    entries.push((chart, gens));
                    self.expect(Tok::Semi, "`;`")?;
                }
                self.bump();
                StmtKind::Sheaf {
                    name,
                    atlas,
                    entries,
                }
            }
            "show" => StmtKind::Show { expr: self.expr()? },
            _ => unreachable!(),
        };
        let end = self.expect(Tok::Semi, "`;`")?;
        Ok(Stmt {
            kind,
            span: start.join(&end),
        })
    }

    fn block_head(&mut self) -> PResult<(Ident, Ident)> {
        let name = self.ident("a name")?;
        self.keyword("on")?;
        let atlas = self.ident("an atlas name")?;
        self.expect(Tok::LBrace, "`{`")?;
        Ok((name, atlas))
    }

    fn atlas(&mut self) -> PResult<StmtKind> {
        let name = self.ident("an atlas name")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut charts = Vec::new();
        let mut glues = Vec::new();
        loop {
            let kw = match &self.peek().tok {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Ident(k) if k == "chart" || k == "glue" => k.clone(),
                _ => return Err(self.unexpected("`chart`, `glue` or `}`")),
            };
            let start = self.bump().span;
            if kw == "chart" {
                let cname = self.ident("a chart name")?;
                self.expect(Tok::Eq, "`=`")?;
                charts.push(ChartDecl {
                    name: cname,
                    ring: self.ring_spec()?,
                });
            } else {
                let target = self.ident("a chart name")?;
                self.expect(Tok::Comma, "`,`")?;
                let source = self.ident("a chart name")?;
                self.keyword("by")?;
                let overlap = self.expr()?;
                self.expect(Tok::LBrace, "`{`")?;
                let mut images = Vec::new();
                while !self.at(&Tok::RBrace) {
                    let v = self.ident("a variable of the source chart")?;
                    self.expect(Tok::Eq, "`=`")?;
                    images.push((v, self.expr()?));
                    self.expect(Tok::Semi, "`;`")?;
                }
                let end = self.bump().span;
                glues.push(Glue {
                    target,
                    source,
                    overlap,
                    images,
                    span: start.join(&end),
                });
            }
            self.expect(Tok::Semi, "`;`")?;
        }
        Ok(StmtKind::Atlas {
            name,
            charts,
            glues,
        })
    }

    fn ring_spec(&mut self) -> PResult<RingSpec> {
        let field_id = self.ident("`QQ` or `GF(p)`")?;
        let field = match field_id.name.as_str() {
            "QQ" => FieldSpec::Rational,
            "GF" => {
                self.expect(Tok::LParen, "`(`")?;
                let p = self.integer("a prime")?;
                self.expect(Tok::RParen, "`)`")?;
                FieldSpec::Prime(p)
            }
            other => {
                return Err(
                    Diagnostic::error(field_id.span, format!("unknown field `{other}`"))
                        .with_hint("use QQ or GF(p)"),
                )
            }
        };
        self.expect(Tok::LBracket, "`[`")?;
        let mut vars = vec![self.ident("a variable name")?];
        while self.eat(&Tok::Comma) {
            vars.push(self.ident("a variable name")?);
        }
        self.expect(Tok::RBracket, "`,` or `]`")?;
        let mut order = None;
        if matches!(&self.peek().tok, Tok::Ident(w) if w == "with") {
            self.bump();
            self.keyword("order")?;
            let o = self.ident("a monomial order")?;
            order = Some(match o.name.as_str() {
                "lex" => OrderSpec::Lex,
                "grevlex" => OrderSpec::Grevlex,
                "block" => {
                    self.expect(Tok::LParen, "`(`")?;
                    let k = self.integer("a block size")?;
                    self.expect(Tok::RParen, "`)`")?;
                    OrderSpec::Block(k)
                }
                "weighted" => {
                    self.expect(Tok::LParen, "`(`")?;
                    let mut w = vec![self.integer("a weight")?];
                    while self.eat(&Tok::Comma) {
                        w.push(self.integer("a weight")?);
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    OrderSpec::Weighted(w)
                }
                other => {
                    return Err(Diagnostic::error(
                        o.span,
                        format!("unknown monomial order `{other}`"),
                    )
                    .with_hint("use lex, grevlex, block(k) or weighted(w1, ..., wn)"))
                }
            });
        }
        Ok(RingSpec { field, vars, order })
    }

    fn expr_list(&mut self, close: &Tok) -> PResult<Vec<Expr>> {
        let mut out = Vec::new();
        if self.at(close) {
            return Ok(out);
        }
        out.push(self.expr()?);
        while self.eat(&Tok::Comma) {
            out.push(self.expr()?);
        }
        Ok(out)
    }

    pub fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            let span = lhs.span().join(&rhs.span());
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), span);
        }
    }

    fn product(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span().join(&rhs.span());
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), span);
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.at(&Tok::Minus) {
            let start = self.bump().span;
            let e = self.unary()?;
            let span = start.join(&e.span());
            return Ok(Expr::Neg(Box::new(e), span));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let mut base = self.atom()?;
        while self.eat(&Tok::Caret) {
            let n = self.integer("a nonnegative integer exponent")?;
            let span = base.span().join(&self.prev_span());
            base = Expr::Pow(Box::new(base), n, span);
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().tok.clone() {
            Tok::Int(s) => {
                let span = self.bump().span;
                Ok(Expr::Int(s, span))
            }
            Tok::Ident(_) => {
                let id = self.ident("a name")?;
                if self.at(&Tok::LParen) {
                    self.bump();
                    let args = self.expr_list(&Tok::RParen)?;
                    let end = self.expect(Tok::RParen, "`,` or `)`")?;
                    let span = id.span.join(&end);
                    return Ok(Expr::Call(id, args, span));
                }
                Ok(Expr::Name(id))
            }
            Tok::LParen => {
                let start = self.bump().span;
                let mut items = self.expr_list(&Tok::RParen)?;
                let end = self.expect(Tok::RParen, "`,` or `)`")?;
                if items.len() == 1 {
                    return Ok(items.pop().expect("one item"));
                }
                Ok(Expr::Tuple(items, start.join(&end)))
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_statements() {
        let (s, d) = parse("ring A = QQ[x,y]; ideal I = (x,y); poly f = x^2; show proper(I,f);");
        assert!(d.is_empty(), "{d:?}");
        assert_eq!(s.stmts.len(), 4);
    }

    #[test]
    fn stray_comma() {
        let src = "ring A = QQ[x,,y];";
        let (s, d) = parse(src);
        assert!(s.stmts.is_empty());
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].offset, src.find(",,").unwrap() + 1);
        assert_eq!((d[0].line, d[0].column, d[0].length), (1, 15, 1));
    }

    #[test]
    fn recovery_continues_after_bad_statement() {
        let (s, d) = parse(
            "ring A = QQ[x]; poly f = x +* 2; poly g = x; atlas X { chart U = QQ[s] }; show g;",
        );
        assert_eq!(d.len(), 2, "{d:?}");
        assert_eq!(s.stmts.len(), 3);
    }

    #[test]
    fn precedence_and_round_trip() {
        let src = "poly f = -x^2 + 3/2*y*(x - y) - (x - (y - 1)) + (x^2)^3;";
        let (s, d) = parse(src);
        assert!(d.is_empty());
        let printed = s.to_string();
        let (again, _) = parse(&printed);
        assert_eq!(s, again);
        assert_eq!(
            printed.trim(),
            "poly f = -x^2 + 3/2*y*(x - y) - (x - (y - 1)) + (x^2)^3;"
        );
    }

    #[test]
    fn blocks_round_trip() {
        let src = "atlas X { chart U0 = QQ[s]; chart U1 = GF(7)[u] with order block(1); glue U0, U1 by s { u = 1/s; }; };\n\
                   divisor D on X { U0: s; U1: 1; };\nsheaf S on X { U0: (s, 1); U1: (1); };\nrees (a, b);";
        let (s, d) = parse(src);
        assert!(d.is_empty(), "{d:?}");
        let (again, d2) = parse(&s.to_string());
        assert!(d2.is_empty());
        assert_eq!(s, again);
    }
}
