use std::cmp::Ordering;

use crate::poly::{revlex_tail, Monomial};

/// Term orders understood by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
    /// Grevlex on variables `0..split`, ties broken by grevlex on the rest.
    /// Any polynomial whose leading monomial avoids the first block lies
    /// entirely in the second, which is what elimination needs.
    Block { split: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => a.cmp_grevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::Block { split } => {
                let (ah, at) = a.exps().split_at(split);
                let (bh, bt) = b.exps().split_at(split);
                cmp_graded_revlex(ah, bh).then_with(|| cmp_graded_revlex(at, bt))
            }
        }
    }
}

fn cmp_graded_revlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| revlex_tail(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block { split: 1 };
        // t beats any power of the remaining variables
        let t = Monomial::new(&[1, 0, 0]);
        let big = Monomial::new(&[0, 5, 5]);
        assert_eq!(o.cmp(&t, &big), Ordering::Greater);
        // inside the second block it is grevlex
        assert_eq!(
            o.cmp(&Monomial::new(&[0, 1, 1]), &Monomial::new(&[0, 2, 0])),
            Monomial::new(&[1, 1]).cmp_grevlex(&Monomial::new(&[2, 0]))
        );
    }
}
