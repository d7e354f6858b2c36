//! Embedding of GF(q) into an extension GF(q^s) built over the same prime.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Elem, Field};
use crate::poly::Poly;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Extension {
    small: Arc<Field>,
    big: Arc<Field>,
    embed: Vec<Elem>,
    back: HashMap<Elem, Elem>,
}

impl Extension {
    /// Builds GF(q^s) and embeds GF(q) by sending the modulus root to the least
    /// root of the same polynomial in the larger field.
    pub fn new(small: &Arc<Field>, s: u32) -> Result<Extension> {
        if !small.is_enumerable() {
            return Err(Error::InvalidArgument("subfield is too large to embed".into()));
        }
        let big = Field::new(small.characteristic(), small.degree() * s)?;
        let modulus = Poly::new(small.modulus().iter().map(|&c| Elem(c)).collect());
        let root = big
            .elements()
            .find(|&x| modulus.eval(x, &big).is_zero())
            .ok_or_else(|| Error::InvalidArgument("modulus has no root in the extension".into()))?;
        let k = small.degree();
        let root_powers: Vec<Elem> = (0..k).map(|i| big.pow(root, i as u64)).collect();
        let embed: Vec<Elem> = small
            .elements()
            .map(|a| {
                small
                    .to_coeffs(a)
                    .iter()
                    .zip(&root_powers)
                    .fold(Elem::ZERO, |acc, (&c, &r)| big.add(acc, big.mul(Elem(c), r)))
            })
            .collect();
        let back = embed.iter().enumerate().map(|(i, &e)| (e, Elem(i as u32))).collect();
        Ok(Extension { small: small.clone(), big, embed, back })
    }

    pub fn small(&self) -> &Arc<Field> {
        &self.small
    }

    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.embed[a.0 as usize]
    }

    /// Preimage of `x`, `None` when `x` is outside the subfield.
    pub fn restrict(&self, x: Elem) -> Option<Elem> {
        self.back.get(&x).copied()
    }
}
