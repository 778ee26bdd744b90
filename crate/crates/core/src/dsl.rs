//! A small expression language over the subgroup operators, for scripting
//! and exploratory queries against a loaded group.
//!
//! Grammar:
//!
//! ```text
//! expr := 'S' | name '(' expr {',' expr} ')' | '[' expr ',' expr [';' int] ']'
//! ```
//!
//! `[a,b;k]` is the k-fold left-normed commutator; `k` defaults to 1.

use std::cell::RefCell;
use std::fmt;

use crate::charsub;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::subgroup::{
    centralizer, center_of, is_elementary_abelian, is_normal, iterated_commutator, join,
    map_back, meet, normal_closure, omega1, subgroup_as_group, Subgroup,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Name {
    Z,
    C,
    Omega1,
    J,
    X,
    X1,
    Ncl,
    Join,
    Meet,
    Derived,
}

impl Name {
    fn arity(self) -> usize {
        match self {
            Name::C | Name::Join | Name::Meet => 2,
            _ => 1,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Name::Z => "Z",
            Name::C => "C",
            Name::Omega1 => "Omega1",
            Name::J => "J",
            Name::X => "X",
            Name::X1 => "X1",
            Name::Ncl => "ncl",
            Name::Join => "join",
            Name::Meet => "meet",
            Name::Derived => "derived",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// The ambient group.
    S,
    Call(Name, Vec<Expr>),
    /// `[a, b; k]`.
    Comm(Box<Expr>, Box<Expr>, u32),
    Ord(Box<Expr>),
    Idx(Box<Expr>, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::S => write!(f, "S"),
            Expr::Call(name, args) => {
                write!(f, "{}(", name.as_str())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Expr::Comm(a, b, 1) => write!(f, "[{a},{b}]"),
            Expr::Comm(a, b, k) => write!(f, "[{a},{b};{k}]"),
            Expr::Ord(e) => write!(f, "Ord({e})"),
            Expr::Idx(a, b) => write!(f, "Idx({a},{b})"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.expected("end of input");
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn expected<T>(&self, what: &str) -> Result<T> {
        Err(Error::ExprParse {
            offset: self.pos,
            expected: what.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, expected: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == expected => {
                self.pos += c.len_utf8();
                Ok(())
            }
            _ => self.expected(&format!("'{expected}'")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            Some('[') => self.comm(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.name_or_call(),
            _ => self.expected("an expression: 'S', a call, or '[a,b;k]'"),
        }
    }

    fn comm(&mut self) -> Result<Expr> {
        self.eat('[')?;
        let a = self.expr()?;
        self.eat(',')?;
        let b = self.expr()?;
        self.skip_ws();
        let k = if self.peek() == Some(';') {
            self.pos += 1;
            self.int()?
        } else {
            1
        };
        self.eat(']')?;
        Ok(Expr::Comm(Box::new(a), Box::new(b), k))
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.expected("a positive integer");
        }
        let n: u32 = self.src[start..self.pos].parse().map_err(|_| Error::ExprParse {
            offset: start,
            expected: "a positive integer that fits in 32 bits".into(),
        })?;
        if n == 0 {
            return Err(Error::ExprParse {
                offset: start,
                expected: "a positive integer (k >= 1)".into(),
            });
        }
        Ok(n)
    }

    fn ident(&mut self) -> (usize, &'a str) {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        (start, &self.src[start..self.pos])
    }

    fn name_or_call(&mut self) -> Result<Expr> {
        let (offset, ident) = self.ident();
        self.skip_ws();
        let has_args = self.peek() == Some('(');
        if !has_args {
            return match ident {
                "S" => Ok(Expr::S),
                _ => Err(Error::ExprParse {
                    offset,
                    expected: "'S' (only the ambient group may appear bare)".into(),
                }),
            };
        }
        self.eat('(')?;
        let mut args = vec![self.expr()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    args.push(self.expr()?);
                }
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return self.expected("',' or ')'"),
            }
        }
        let arity_error = |expected: usize| {
            Err(Error::ExprArity {
                offset,
                name: ident.to_string(),
                expected,
                got: args.len(),
            })
        };
        let name = match ident {
            "Z" => Name::Z,
            "C" => Name::C,
            "Omega1" => Name::Omega1,
            "J" => Name::J,
            "X" => Name::X,
            "X1" => Name::X1,
            "ncl" => Name::Ncl,
            "join" => Name::Join,
            "meet" => Name::Meet,
            "derived" => Name::Derived,
            "Ord" => {
                if args.len() != 1 {
                    return arity_error(1);
                }
                return Ok(Expr::Ord(Box::new(args.remove(0))));
            }
            "Idx" => {
                if args.len() != 2 {
                    return arity_error(2);
                }
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                return Ok(Expr::Idx(Box::new(a), Box::new(b)));
            }
            _ => {
                return Err(Error::ExprParse {
                    offset,
                    expected: "a known operator (Z, C, Omega1, J, X, X1, ncl, join, meet, \
                               derived, Ord, Idx)"
                        .into(),
                })
            }
        };
        if args.len() != name.arity() {
            return arity_error(name.arity());
        }
        Ok(Expr::Call(name, args))
    }
}

/// A subgroup of the ambient group, or an integer from `Ord` / `Idx`.
pub enum Value {
    Subgroup(Subgroup),
    Int(u64),
}

/// Evaluation context: the ambient group with a lazy cache for the
/// expensive subgroups, shared read-only across one session.
pub struct EvalCtx<'g> {
    g: &'g Group,
    caps: Caps,
    x: RefCell<Option<Subgroup>>,
    x1: RefCell<Option<Subgroup>>,
    j: RefCell<Option<Subgroup>>,
}

impl<'g> EvalCtx<'g> {
    pub fn new(g: &'g Group, caps: Caps) -> EvalCtx<'g> {
        EvalCtx {
            g,
            caps,
            x: RefCell::new(None),
            x1: RefCell::new(None),
            j: RefCell::new(None),
        }
    }

    pub fn group(&self) -> &Group {
        self.g
    }

    fn x(&self) -> Result<Subgroup> {
        if let Some(x) = self.x.borrow().as_ref() {
            return Ok(x.clone());
        }
        let (x, _) = charsub::oliver_x(self.g)?;
        *self.x.borrow_mut() = Some(x.clone());
        Ok(x)
    }

    fn x1(&self) -> Result<Subgroup> {
        if let Some(x1) = self.x1.borrow().as_ref() {
            return Ok(x1.clone());
        }
        let x1 = charsub::x1_with(self.g, &self.x()?)?;
        *self.x1.borrow_mut() = Some(x1.clone());
        Ok(x1)
    }

    fn j(&self) -> Result<Subgroup> {
        if let Some(j) = self.j.borrow().as_ref() {
            return Ok(j.clone());
        }
        let j = charsub::thompson_j(self.g, self.caps.search_budget)?;
        *self.j.borrow_mut() = Some(j.clone());
        Ok(j)
    }
}

fn eval_subgroup(e: &Expr, ctx: &EvalCtx) -> Result<Subgroup> {
    match eval_expr(e, ctx)? {
        Value::Subgroup(h) => Ok(h),
        Value::Int(_) => Err(Error::TypeMismatch {
            expected: "subgroup",
            got: "integer",
        }),
    }
}

pub fn eval_expr(e: &Expr, ctx: &EvalCtx) -> Result<Value> {
    match e {
        Expr::S => Ok(Value::Subgroup(ctx.g.full_subgroup())),
        Expr::Ord(inner) => {
            let h = eval_subgroup(inner, ctx)?;
            Ok(Value::Int(h.order() as u64))
        }
        Expr::Idx(a, b) => {
            let ha = eval_subgroup(a, ctx)?;
            let hb = eval_subgroup(b, ctx)?;
            if !hb.is_subgroup_of(&ha) {
                return Err(Error::IndexNotNested);
            }
            Ok(Value::Int((ha.order() / hb.order()) as u64))
        }
        Expr::Comm(a, b, k) => {
            let ha = eval_subgroup(a, ctx)?;
            let hb = eval_subgroup(b, ctx)?;
            Ok(Value::Subgroup(iterated_commutator(ctx.g, &ha, &hb, *k)))
        }
        Expr::Call(name, args) => {
            let g = ctx.g;
            let sub = match name {
                Name::Z => center_of(g, &eval_subgroup(&args[0], ctx)?),
                Name::C => {
                    let ambient = eval_subgroup(&args[0], ctx)?;
                    if ambient.order() != g.order() {
                        return Err(Error::UnsupportedAmbient);
                    }
                    centralizer(g, &eval_subgroup(&args[1], ctx)?)
                }
                Name::Omega1 => omega1(g, &eval_subgroup(&args[0], ctx)?),
                Name::Ncl => {
                    let h = eval_subgroup(&args[0], ctx)?;
                    normal_closure(g, h.gens())
                }
                Name::Join => {
                    let a = eval_subgroup(&args[0], ctx)?;
                    let b = eval_subgroup(&args[1], ctx)?;
                    join(g, &a, &b)
                }
                Name::Meet => {
                    let a = eval_subgroup(&args[0], ctx)?;
                    let b = eval_subgroup(&args[1], ctx)?;
                    meet(g, &a, &b)
                }
                Name::Derived => {
                    let h = eval_subgroup(&args[0], ctx)?;
                    iterated_commutator(g, &h, &h, 1)
                }
                Name::J | Name::X | Name::X1 => {
                    let h = eval_subgroup(&args[0], ctx)?;
                    if h.order() == g.order() {
                        match name {
                            Name::J => ctx.j()?,
                            Name::X => ctx.x()?,
                            _ => ctx.x1()?,
                        }
                    } else {
                        // Re-root the subgroup as a standalone group, compute
                        // there, and map the result back.
                        let standalone = subgroup_as_group(g, &h, "sub");
                        let inner = match name {
                            Name::J => charsub::thompson_j(&standalone, ctx.caps.search_budget)?,
                            Name::X => charsub::oliver_x(&standalone)?.0,
                            _ => {
                                let (x, _) = charsub::oliver_x(&standalone)?;
                                charsub::x1_with(&standalone, &x)?
                            }
                        };
                        map_back(g, &standalone, &inner)
                    }
                }
            };
            Ok(Value::Subgroup(sub))
        }
    }
}

/// Flags reported for subgroup-valued results.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EvalFlags {
    pub normal: bool,
    pub elementary_abelian: bool,
    pub rank: Option<u32>,
}

/// The single JSON object the CLI prints for an evaluation. Field order is
/// part of the contract; integer results from `Ord` land in `order` and
/// those from `Idx` land in `index`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EvalOutput {
    pub expr: String,
    pub kind: &'static str,
    pub order: Option<u64>,
    pub index: Option<u64>,
    pub flags: Option<EvalFlags>,
    pub generators: Option<Vec<String>>,
}

impl std::fmt::Display for EvalOutput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(self).expect("eval output serializes")
        )
    }
}

pub fn render_result(expr: &Expr, value: &Value, ctx: &EvalCtx) -> EvalOutput {
    let g = ctx.g;
    match value {
        Value::Subgroup(h) => {
            let (ea, rank) = is_elementary_abelian(g, h);
            let gens: Vec<String> = h.gens().iter().map(|&x| g.word_string(x)).collect();
            EvalOutput {
                expr: expr.to_string(),
                kind: "subgroup",
                order: Some(h.order() as u64),
                index: Some((g.order() / h.order()) as u64),
                flags: Some(EvalFlags {
                    normal: is_normal(g, h),
                    elementary_abelian: ea,
                    rank,
                }),
                generators: Some(gens),
            }
        }
        Value::Int(n) => {
            let (order, index) = match expr {
                Expr::Idx(..) => (None, Some(*n)),
                _ => (Some(*n), None),
            };
            EvalOutput {
                expr: expr.to_string(),
                kind: "integer",
                order,
                index,
                flags: None,
                generators: None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use proptest::prelude::*;

    fn build(name: &str) -> Group {
        let caps = Caps::default();
        let spec = corpus::default_corpus(caps.max_order)
            .into_iter()
            .find(|s| s.name() == name)
            .unwrap();
        corpus::build(&spec, &caps).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_expr("Z(S)").unwrap(),
            Expr::Call(Name::Z, vec![Expr::S])
        );
        assert_eq!(
            parse_expr("[S,S;2]").unwrap(),
            Expr::Comm(Box::new(Expr::S), Box::new(Expr::S), 2)
        );
        assert_eq!(
            parse_expr("[S, S]").unwrap(),
            Expr::Comm(Box::new(Expr::S), Box::new(Expr::S), 1)
        );
        let nested = parse_expr("Omega1(C(S, X(S)))").unwrap();
        assert_eq!(
            nested,
            Expr::Call(
                Name::Omega1,
                vec![Expr::Call(
                    Name::C,
                    vec![Expr::S, Expr::Call(Name::X, vec![Expr::S])]
                )]
            )
        );
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match parse_expr("Z(S") {
            Err(Error::ExprParse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_expr("Q(S)") {
            Err(Error::ExprParse { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("unexpected {other:?}"),
        }
        match parse_expr("Z(S,S)") {
            Err(Error::ExprArity { expected: 1, got: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_expr("[S,S;0]").is_err());
        assert!(parse_expr("Z(S) trailing").is_err());
        assert!(parse_expr("").is_err());
    }

    #[test]
    fn eval_examples_on_heisenberg() {
        let g = build("heis27");
        let ctx = EvalCtx::new(&g, Caps::default());
        match eval_expr(&parse_expr("Ord(Z(S))").unwrap(), &ctx).unwrap() {
            Value::Int(3) => {}
            _ => panic!("Ord(Z(S)) should be 3"),
        }
        match eval_expr(&parse_expr("Ord([S,S;2])").unwrap(), &ctx).unwrap() {
            Value::Int(1) => {}
            _ => panic!("class 2: [S,S;2] = 1"),
        }
        match eval_expr(&parse_expr("Idx(join(J(S),X(S)),X(S))").unwrap(), &ctx).unwrap() {
            Value::Int(n) => assert_ne!(n, 3),
            _ => panic!("index is an integer"),
        }
    }

    #[test]
    fn eval_matches_direct_computation() {
        let g = build("wr3");
        let ctx = EvalCtx::new(&g, Caps::default());
        let (x, _) = charsub::oliver_x(&g).unwrap();
        match eval_expr(&parse_expr("X(S)").unwrap(), &ctx).unwrap() {
            Value::Subgroup(h) => assert_eq!(h.members(), x.members()),
            _ => panic!(),
        }
        let j = charsub::thompson_j(&g, Caps::default().search_budget).unwrap();
        match eval_expr(&parse_expr("J(S)").unwrap(), &ctx).unwrap() {
            Value::Subgroup(h) => assert_eq!(h.members(), j.members()),
            _ => panic!(),
        }
    }

    #[test]
    fn ambient_restriction_and_type_errors() {
        // Nonabelian, so Z(S) is a proper subgroup and cannot be an ambient.
        let g = build("heis27");
        let ctx = EvalCtx::new(&g, Caps::default());
        assert!(matches!(
            eval_expr(&parse_expr("C(Z(S),S)").unwrap(), &ctx),
            Err(Error::UnsupportedAmbient)
        ));
        // C(S, ...) with a full-group value works even when spelled via join.
        assert!(eval_expr(&parse_expr("C(join(S,S),Z(S))").unwrap(), &ctx).is_ok());
        assert!(matches!(
            eval_expr(&parse_expr("Ord(Ord(S))").unwrap(), &ctx),
            Err(Error::TypeMismatch { .. })
        ));
        assert!(matches!(
            eval_expr(&parse_expr("Idx(Z(S),S)").unwrap(), &ctx),
            Err(Error::IndexNotNested)
        ));
    }

    #[test]
    fn render_shapes() {
        let g = build("c9");
        let ctx = EvalCtx::new(&g, Caps::default());
        let e = parse_expr("Ord(Z(S))").unwrap();
        let v = eval_expr(&e, &ctx).unwrap();
        let out = render_result(&e, &v, &ctx);
        assert_eq!(out.kind, "integer");
        assert_eq!(out.order, Some(9));
        assert!(out.index.is_none());

        let e = parse_expr("Omega1(S)").unwrap();
        let v = eval_expr(&e, &ctx).unwrap();
        let out = render_result(&e, &v, &ctx);
        assert_eq!(out.kind, "subgroup");
        assert_eq!(out.order, Some(3));
        assert_eq!(out.index, Some(3));
        assert!(out.flags.unwrap().elementary_abelian);

        // The contract field order.
        let e = parse_expr("Idx(Omega1(S),Omega1(S))").unwrap();
        let v = eval_expr(&e, &ctx).unwrap();
        let text = render_result(&e, &v, &ctx).to_string();
        let positions: Vec<usize> = ["\"expr\"", "\"kind\"", "\"order\"", "\"index\"", "\"flags\"", "\"generators\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = Just(Expr::S);
        leaf.prop_recursive(4, 32, 3, |inner| {
            prop_oneof![
                (inner.clone()).prop_map(|e| Expr::Call(Name::Z, vec![e])),
                (inner.clone()).prop_map(|e| Expr::Call(Name::Omega1, vec![e])),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Call(Name::C, vec![a, b])),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Call(Name::Join, vec![a, b])),
                (inner.clone(), inner.clone(), 1u32..5)
                    .prop_map(|(a, b, k)| Expr::Comm(Box::new(a), Box::new(b), k)),
                (inner.clone()).prop_map(|e| Expr::Ord(Box::new(e))),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::Idx(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            let back = parse_expr(&printed).unwrap();
            prop_assert_eq!(back, e);
        }

        #[test]
        fn parser_never_panics(s in "\\PC*") {
            let _ = parse_expr(&s);
        }
    }
}
