use std::fmt;

use super::{Formula, Marker, Term, Variable};

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Named(name) => f.write_str(name),
            Variable::Placeholder(i) => write!(f, "$v{i}"),
            Variable::Bound(i) => write!(f, "$w{i}"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_str("0"),
            Term::Var(v) => write!(f, "{v}"),
            Term::Succ(t) => write!(f, "S({t})"),
            Term::Add(s, t) => write!(f, "({s} + {t})"),
            Term::Mul(s, t) => write!(f, "({s} * {t})"),
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Marker::Depth(t, c) => write!(f, "@dpt({t}, {c})"),
            Marker::Sent(t) => write!(f, "@sent({t})"),
            Marker::Provable(t) => write!(f, "@pr({t})"),
            Marker::Subst { code, arg, formula } => write!(f, "@sub({code}, {arg}){{{formula}}}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(s, t) => write!(f, "({s} = {t})"),
            Formula::Truth(t) => write!(f, "T({t})"),
            Formula::Marked(m) => write!(f, "{m}"),
            Formula::Not(a) => write!(f, "~{a}"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Imp(a, b) => write!(f, "({a} -> {b})"),
            Formula::Exists(v, a) => write!(f, "E {v}. {a}"),
            Formula::Forall(v, a) => write!(f, "A {v}. {a}"),
        }
    }
}
