use num_bigint::BigUint;

use crate::field::Poly;

/// The residue field `k[x]/(p)` of an irreducible `p`, for square tests and
/// square roots of residues.
pub(crate) struct ResidueRing {
    modulus: Poly,
}

impl ResidueRing {
    pub(crate) fn new(modulus: &Poly) -> Self {
        ResidueRing {
            modulus: modulus.clone(),
        }
    }

    fn order(&self) -> Option<BigUint> {
        let q = self.modulus.field().order()?;
        Some(q.pow(self.modulus.deg() as u32))
    }

    pub(crate) fn is_square(&self, a: &Poly) -> bool {
        let a = a.rem(&self.modulus);
        if a.is_zero() {
            return true;
        }
        match self.order() {
            // only linear moduli over Q are admitted
            None => a.coeff(0).is_square(),
            Some(q) => a.pow_mod(&((q - 1u32) / 2u32), &self.modulus).is_one(),
        }
    }

    /// A square root in canonical form (degree below the modulus), if any.
    /// Which of the two roots is returned is deterministic.
    pub(crate) fn sqrt(&self, a: &Poly) -> Option<Poly> {
        let m = &self.modulus;
        let a = a.rem(m);
        if a.is_zero() {
            return Some(a);
        }
        if !self.is_square(&a) {
            return None;
        }
        let Some(q) = self.order() else {
            return Some(Poly::constant(a.coeff(0).sqrt()?));
        };
        let field = m.field().clone();
        let one = Poly::one(&field);
        let q1 = &q - 1u32;
        let mut s = 0u32;
        let mut t = q1.clone();
        while !t.bit(0) {
            t >>= 1;
            s += 1;
        }
        let half = &q1 / 2u32;
        let minus_one = one.neg().rem(m);
        let base_q = field.small_order().unwrap_or(u64::MAX);
        let k = m.deg() as usize;
        let mut idx: u64 = 2;
        let z = loop {
            let mut rest = idx;
            let coeffs = (0..k)
                .map(|_| {
                    let d = rest % base_q;
                    rest /= base_q;
                    field.element_from_index(d)
                })
                .collect();
            let c = Poly::new(&field, coeffs);
            if !c.is_zero() && c.pow_mod(&half, m) == minus_one {
                break c;
            }
            idx += 1;
        };
        let mut mm = s;
        let mut c = z.pow_mod(&t, m);
        let mut tt = a.pow_mod(&t, m);
        let mut r = a.pow_mod(&((&t + 1u32) / 2u32), m);
        while !tt.is_one() {
            let mut i = 0;
            let mut probe = tt.clone();
            while !probe.is_one() {
                probe = probe.mul_mod(&probe, m);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(mm - i - 1) {
                b = b.mul_mod(&b, m);
            }
            mm = i;
            c = b.mul_mod(&b, m);
            tt = tt.mul_mod(&c, m);
            r = r.mul_mod(&b, m);
        }
        Some(r)
    }
}
