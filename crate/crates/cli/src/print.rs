//! Canonical text for polynomials, forms and ideals. Everything printed
//! here parses back with [`crate::parse`].

use num_traits::{One, Signed};
use torfol::forms::KForm;
use torfol::groebner::{Engine, MonomialOrder};
use torfol::poly::Monomial;
use torfol::toric::VectorField;
use torfol::{QIdeal, QPoly, Rational, Result};

fn monomial(m: &Monomial, vars: &[String]) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| if *e == 1 { vars[i].clone() } else { format!("{}^{e}", vars[i]) })
        .collect();
    parts.join("*")
}

fn magnitude(c: &Rational) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

/// Terms in descending grevlex order, e.g. `-(1/2)*x1^3*x2 + x4 - 3`.
pub fn polynomial(p: &QPoly, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        out.push_str(match (k, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let abs = c.abs();
        if m.is_one() {
            out.push_str(&magnitude(&abs));
        } else if abs.is_one() {
            out.push_str(&monomial(m, vars));
        } else {
            out.push_str(&format!("{}*{}", magnitude(&abs), monomial(m, vars)));
        }
    }
    out
}

/// `(A)*dz1 + (B)*dz1^dz3`, one term per nonzero coefficient.
pub fn form(a: &KForm, vars: &[String]) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = a
        .terms()
        .iter()
        .map(|(idx, c)| {
            if idx.is_empty() {
                polynomial(c, vars)
            } else {
                let d: Vec<String> = idx.iter().map(|i| format!("d{}", vars[*i])).collect();
                format!("({})*{}", polynomial(c, vars), d.join("^"))
            }
        })
        .collect();
    parts.join(" + ")
}

pub fn field(y: &VectorField, vars: &[String]) -> String {
    let parts: Vec<String> = y
        .coefficients()
        .iter()
        .enumerate()
        .filter(|(_, b)| !b.is_zero())
        .map(|(i, b)| format!("({})*d/d{}", polynomial(b, vars), vars[i]))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// The reduced Gröbner basis, monic, sorted by leading monomial
/// (ascending); a canonical, diffable description of the ideal.
pub fn ideal(engine: &Engine, i: &QIdeal, order: MonomialOrder, vars: &[String]) -> Result<Vec<String>> {
    let basis = engine.groebner_basis(i.generators(), order)?;
    Ok(basis.iter().map(|p| polynomial(p, vars)).collect())
}

/// Generators as given (sorted and deduplicated), without a basis
/// computation.
pub fn generators(i: &QIdeal, vars: &[String]) -> Vec<String> {
    let mut g: Vec<String> = i.generators().iter().filter(|p| !p.is_zero()).map(|p| polynomial(&p.with_positive_lead(), vars)).collect();
    g.sort();
    g.dedup();
    g
}

/// `{(1,3), (2,4)}` with 1-based indices.
pub fn pairs(p: &[(usize, usize)]) -> String {
    let parts: Vec<String> = p.iter().map(|(a, b)| format!("({},{})", a + 1, b + 1)).collect();
    format!("{{{}}}", parts.join(", "))
}
