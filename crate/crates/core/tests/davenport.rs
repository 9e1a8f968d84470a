use descentff_core::algebra::{FieldCtx, Fq, Poly};
use descentff_core::model::check_davenport;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(k: &FieldCtx, rng: &mut ChaCha8Rng, max_deg: i64) -> Poly {
    if max_deg < 0 {
        return Poly::zero();
    }
    Poly::from_coeffs((0..=max_deg).map(|_| Fq(rng.next_u64() % k.q())).collect())
}

/// `g = c^2 (s^2 + a)`, `h = c^3 (s^3 + 3/2 a s + b)` so the leading terms of `g^3 - h^2` cancel.
fn sample(k: &FieldCtx, rng: &mut ChaCha8Rng, m: i64) -> (Poly, Poly) {
    let mut s = random_poly(k, rng, m - 1);
    s = s.add(k, &Poly::monomial(k.one(), m as usize));
    let da = (rng.next_u64() % m as u64) as i64;
    let a = random_poly(k, rng, da);
    let db = (rng.next_u64() % (2 * m as u64)) as i64 - 1;
    let b = random_poly(k, rng, db);
    let c = Fq(1 + rng.next_u64() % (k.q() - 1));
    let g = s.square(k).add(k, &a).scale(k, k.mul(c, c));
    let three_halves = k.div(k.from_int(3), k.from_int(2));
    let h = s.pow(k, 3).add(k, &a.mul(k, &s).scale(k, three_halves)).add(k, &b).scale(k, k.pow(c, 3));
    (g, h)
}

#[test]
fn davenport_bound_on_accepted_samples() {
    let k = FieldCtx::prime(11).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for m in 1..=3i64 {
        let (mut accepted, mut drawn) = (0, 0);
        while accepted < 1000 {
            drawn += 1;
            assert!(drawn < 100_000, "M = {m}: too few samples meet the precondition");
            let (g, h) = sample(&k, &mut rng, m);
            match check_davenport(&k, &g, &h) {
                Ok(ok) => {
                    assert!(ok, "M = {m}: g = {g:?}, h = {h:?}");
                    accepted += 1;
                }
                Err(_) => continue,
            }
        }
    }
}

#[test]
fn sharp_example_meets_the_bound() {
    let k = FieldCtx::prime(11).unwrap();
    let g = Poly::from_ints(&k, &[0, 0, 1]).add(&k, &Poly::from_ints(&k, &[0, 2]));
    let h = Poly::from_ints(&k, &[0, 0, 0, 1]).add(&k, &Poly::from_ints(&k, &[0, 0, 3]));
    let d = g.pow(&k, 3).sub(&k, &h.square(&k));
    assert!(d.deg() >= 2);
    assert!(check_davenport(&k, &g, &h).unwrap());
}

#[test]
fn preconditions_are_rejected() {
    let k = FieldCtx::prime(11).unwrap();
    let s = Poly::from_ints(&k, &[1, 1]);
    assert!(check_davenport(&k, &s.square(&k), &s.pow(&k, 3)).is_err());
    assert!(check_davenport(&k, &s, &s).is_err());
    assert!(check_davenport(&k, &Poly::one(), &Poly::one()).is_err());
}
