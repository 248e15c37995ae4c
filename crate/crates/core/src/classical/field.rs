/// Arithmetic in GF(q) for q in {2, 3, 4}. GF(4) elements are encoded as
/// bit patterns of polynomials over GF(2) modulo x^2 + x + 1.
#[derive(Clone, Debug)]
pub struct SmallField {
    q: u32,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl SmallField {
    pub fn new(q: u32) -> Option<Self> {
        let n = q as usize;
        let (add, mul): (Vec<Vec<u8>>, Vec<Vec<u8>>) = match q {
            2 | 3 => (
                (0..n).map(|a| (0..n).map(|b| ((a + b) % n) as u8).collect()).collect(),
                (0..n).map(|a| (0..n).map(|b| ((a * b) % n) as u8).collect()).collect(),
            ),
            4 => {
                let gf4_mul = |a: u8, b: u8| {
                    // carry-less product, reduced by x^2 = x + 1
                    let mut p = 0u8;
                    for i in 0..2 {
                        if b & (1 << i) != 0 {
                            p ^= a << i;
                        }
                    }
                    if p & 0b100 != 0 {
                        p ^= 0b111;
                    }
                    p
                };
                (
                    (0..4u8).map(|a| (0..4u8).map(|b| a ^ b).collect()).collect(),
                    (0..4u8).map(|a| (0..4u8).map(|b| gf4_mul(a, b)).collect()).collect(),
                )
            }
            _ => return None,
        };
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add[a][b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mul[a][b] == 1).unwrap_or(0) as u8)
            .collect();
        Some(Self { q, add, mul, neg, inv })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Scales a nonzero vector so its first nonzero coordinate is 1.
    pub fn normalize(&self, v: [u8; 4]) -> [u8; 4] {
        let lead = v.iter().copied().find(|&x| x != 0).expect("nonzero vector");
        let s = self.inv(lead).expect("nonzero");
        v.map(|x| self.mul(s, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold() {
        for q in [2, 3, 4] {
            let f = SmallField::new(q).unwrap();
            let n = q as u8;
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)), "q={q}");
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
        assert!(SmallField::new(5).is_none());
    }
}
