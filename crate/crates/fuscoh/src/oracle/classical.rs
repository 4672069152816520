//! Cochain-level transfer `C^n(H; F_p) -> C^n(G; F_p)` on inhomogeneous cochains.

use super::PermGroup;

/// Right cosets `Ht` with their least representatives.
pub struct RightCosets {
    coset_of: Vec<u32>,
    reps: Vec<u32>,
}

impl RightCosets {
    pub fn new(g: &PermGroup, h: &[u32]) -> RightCosets {
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        for t in 0..g.order() as u32 {
            if coset_of[t as usize] != u32::MAX {
                continue;
            }
            for &x in h {
                coset_of[g.mul(x, t) as usize] = reps.len() as u32;
            }
            reps.push(t);
        }
        RightCosets { coset_of, reps }
    }

    pub fn reps(&self) -> &[u32] {
        &self.reps
    }

    /// The representative of `Hy`.
    pub fn bar(&self, y: u32) -> u32 {
        self.reps[self.coset_of[y as usize] as usize]
    }
}

/// `(tr f)(g_1..g_n) = Σ_t f(k_1, ..., k_n)` with `y_0 = t`, `y_i = y_{i-1} g_i`
/// and `k_i = h(ȳ_{i-1} g_i)`, where `y = h(y) ȳ` splits `y` along `H \ G`.
pub fn transfer_value(g: &PermGroup, cosets: &RightCosets, f: &dyn Fn(&[u32]) -> u32, args: &[u32], p: u32) -> u32 {
    let mut total = 0u64;
    for &t in cosets.reps() {
        let mut y = t;
        let mut ks = Vec::with_capacity(args.len());
        for &gi in args {
            let next = g.mul(cosets.bar(y), gi);
            let bar = cosets.bar(next);
            ks.push(g.mul(next, g.inv(bar)));
            y = next;
        }
        total += f(&ks) as u64;
    }
    (total % p as u64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_multiplies_by_the_index() {
        let s3 = PermGroup::generate(3, &[vec![1, 0, 2], vec![1, 2, 0]]);
        let c3: Vec<u32> = (0..6).filter(|&x| s3.mul(s3.mul(x, x), x) == 0).collect();
        let cosets = RightCosets::new(&s3, &c3);
        assert_eq!(cosets.reps().len(), 2);
        assert_eq!(transfer_value(&s3, &cosets, &|_| 1, &[], 3), 2);
    }

    #[test]
    fn degree_one_is_the_transfer_homomorphism() {
        let s3 = PermGroup::generate(3, &[vec![1, 0, 2], vec![1, 2, 0]]);
        let c3: Vec<u32> = (0..6).filter(|&x| s3.mul(s3.mul(x, x), x) == 0).collect();
        let cosets = RightCosets::new(&s3, &c3);
        let r = c3.iter().copied().find(|&x| x != 0).unwrap();
        let log = |x: u32| -> u32 { (0..3).find(|&k| (0..k).fold(0, |a, _| s3.mul(a, r)) == x).unwrap() };
        let f = |k: &[u32]| log(k[0]);
        for &x in &c3 {
            let v = transfer_value(&s3, &cosets, &f, &[x], 3);
            // the transfer S_3 -> C_3^{ab} restricted to C_3 is x ↦ x · (t x t⁻¹) = 1
            assert_eq!(v, 0);
        }
    }
}
