//! `Z[zeta3]`-lattices: the duals of the root lattices `A_2`, `D_4`,
//! `E_6` and the lattice `E_8` with an explicit `zeta3` action, shell
//! enumeration, residues modulo `2L` and `sqrt(-3) L`, and the
//! exponential identities relating the counts.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::descent::{Relation, Report};
use crate::rat::{int, rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeName {
    A2Dual,
    D4Dual,
    E6Dual,
    E8,
}

impl LatticeName {
    pub const ALL: [LatticeName; 4] = [LatticeName::A2Dual, LatticeName::D4Dual, LatticeName::E6Dual, LatticeName::E8];

    pub fn name(self) -> &'static str {
        match self {
            LatticeName::A2Dual => "A2*",
            LatticeName::D4Dual => "D4*",
            LatticeName::E6Dual => "E6*",
            LatticeName::E8 => "E8",
        }
    }

    /// Accepts `A2*`, `A2dual`, `E8`, ... (case-insensitive).
    pub fn parse(s: &str) -> Option<LatticeName> {
        let t = s.trim().to_ascii_uppercase().replace("DUAL", "*");
        LatticeName::ALL.into_iter().find(|l| l.name() == t || (t == "E8*" && *l == LatticeName::E8))
    }

    fn dynkin(self) -> (usize, &'static [(usize, usize)]) {
        match self {
            LatticeName::A2Dual => (2, &[(0, 1)]),
            LatticeName::D4Dual => (4, &[(0, 1), (1, 2), (1, 3)]),
            LatticeName::E6Dual => (6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]),
            LatticeName::E8 => (8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]),
        }
    }
}

/// A positive definite lattice with an isometry `Z` of order 3 and
/// `Z^2 + Z + I = 0`, in coordinates of a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zzeta3Lattice {
    pub name: LatticeName,
    pub rank: usize,
    pub gram: Vec<Vec<Rat>>,
    /// Column `j` holds the coordinates of `zeta3` applied to basis vector `j`.
    pub zeta: Vec<Vec<i64>>,
    pub min_norm: Rat,
}

/// All lattice vectors of a given norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shell {
    pub norm: Rat,
    pub vectors: Vec<Vec<i64>>,
}

type Mat = Vec<Vec<Rat>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let mut c = vec![vec![int(0); m]; n];
    for i in 0..n {
        for (l, bl) in b.iter().enumerate() {
            if a[i][l] == int(0) {
                continue;
            }
            for j in 0..m {
                c[i][j] += a[i][l] * bl[j];
            }
        }
    }
    c
}

fn transpose<T: Copy>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

fn to_rat(a: &[Vec<i64>]) -> Mat {
    a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| int(i64::from(i == j))).collect()).collect()
}

fn inverse(a: &Mat) -> Mat {
    let n = a.len();
    let mut m: Mat = a.iter().zip(identity(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c] != int(0)).expect("singular matrix");
        m.swap(c, p);
        let inv = int(1) / m[c][c];
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && m[r][c] != int(0) {
                let f = m[r][c];
                let row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(row) {
                    *x -= f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

impl Zzeta3Lattice {
    pub fn norm(&self, v: &[i64]) -> Rat {
        self.inner(v, v)
    }

    pub fn inner(&self, v: &[i64], w: &[i64]) -> Rat {
        let mut s = int(0);
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += self.gram[i][j] * int(v[i] * w[j]);
            }
        }
        s
    }

    pub fn zeta_apply(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.zeta, v)
    }

    /// `sqrt(-3) = 1 + 2 zeta3`.
    pub fn sqrt_minus3_apply(&self, v: &[i64]) -> Vec<i64> {
        let z = self.zeta_apply(v);
        v.iter().zip(z).map(|(a, b)| a + 2 * b).collect()
    }

    /// `Z^2 + Z + I = 0` and `Z^T G Z = G`.
    pub fn zeta_is_valid(&self) -> bool {
        let z = to_rat(&self.zeta);
        let z2 = mat_mul(&z, &z);
        let n = self.rank;
        let cyclo = (0..n).all(|i| (0..n).all(|j| z2[i][j] + z[i][j] + int(i64::from(i == j)) == int(0)));
        let iso = mat_mul(&mat_mul(&transpose(&z), &self.gram), &z) == self.gram;
        cyclo && iso
    }
}

fn cartan(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

/// An isometry `Z` of the root lattice with `<v, Zw> + <Zv, w> = -<v, w>`
/// on the basis, found by backtracking over the roots.
fn find_zeta(g: &[Vec<i64>], roots: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = g.len();
    let ip = |a: &[i64], b: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += g[i][j] * a[i] * b[j];
            }
        }
        s
    };
    let basis: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    fn go(
        i: usize,
        n: usize,
        g: &[Vec<i64>],
        basis: &[Vec<i64>],
        roots: &[Vec<i64>],
        ip: &dyn Fn(&[i64], &[i64]) -> i64,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if i == n {
            return true;
        }
        for (ri, r) in roots.iter().enumerate() {
            if ip(&basis[i], r) != -1 {
                continue;
            }
            let ok = chosen.iter().enumerate().all(|(j, &rj)| {
                let s = &roots[rj];
                ip(r, s) == g[i][j] && ip(&basis[i], s) + ip(r, &basis[j]) == -g[i][j]
            });
            if ok {
                chosen.push(ri);
                if go(i + 1, n, g, basis, roots, ip, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if !go(0, n, g, &basis, roots, &ip, &mut chosen) {
        return None;
    }
    let cols: Vec<Vec<i64>> = chosen.iter().map(|&r| roots[r].clone()).collect();
    Some(transpose(&cols))
}

/// The four lattices of the degree table, with a verified `zeta3` action.
pub fn standard_lattice(name: LatticeName) -> Zzeta3Lattice {
    let (n, edges) = name.dynkin();
    let g = cartan(n, edges);
    let root_lattice = Zzeta3Lattice {
        name,
        rank: n,
        gram: to_rat(&g),
        zeta: identity_i(n),
        min_norm: int(2),
    };
    let roots = enumerate_norm(&root_lattice.gram, int(2));
    let z = find_zeta(&g, &roots).expect("root lattice has a zeta3 action");
    let lat = if name == LatticeName::E8 {
        Zzeta3Lattice { zeta: z, ..root_lattice }
    } else {
        // dual basis: Gram G^-1, action G Z G^-1
        let gi = inverse(&to_rat(&g));
        let zd = mat_mul(&mat_mul(&to_rat(&g), &to_rat(&z)), &gi);
        let zeta = zd
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        assert!(x.is_integer());
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        let mut l = Zzeta3Lattice { name, rank: n, gram: gi, zeta, min_norm: int(0) };
        l.min_norm = minimum_norm(&l);
        l
    };
    debug_assert!(lat.zeta_is_valid());
    lat
}

fn identity_i(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn minimum_norm(l: &Zzeta3Lattice) -> Rat {
    let diag = (0..l.rank).map(|i| l.gram[i][i]).min().unwrap();
    let mut all = enumerate_up_to(&l.gram, diag);
    all.retain(|v| v.iter().any(|&x| x != 0));
    all.iter().map(|v| l.norm(v)).min().unwrap()
}

/// Vectors with `v^T G v <= bound`, by Fincke-Pohst with a floating
/// point search region and exact filtering.
fn enumerate_up_to(gram: &Mat, bound: Rat) -> Vec<Vec<i64>> {
    let n = gram.len();
    let a: Vec<Vec<f64>> = gram.iter().map(|r| r.iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect()).collect();
    let mut q = vec![vec![0f64; n]; n];
    for i in 0..n {
        let mut s = a[i][i];
        for k in 0..i {
            s -= q[k][k] * q[k][i] * q[k][i];
        }
        q[i][i] = s;
        for j in i + 1..n {
            let mut t = a[i][j];
            for k in 0..i {
                t -= q[k][k] * q[k][i] * q[k][j];
            }
            q[i][j] = t / q[i][i];
        }
    }
    let b = *bound.numer() as f64 / *bound.denom() as f64 + 1e-9;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(i: usize, rem: f64, q: &[Vec<f64>], x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let n = q.len();
        let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let start = if c >= 0.0 { (c + 0.5) as i64 } else { (c - 0.5) as i64 };
        let visit = |xi: i64, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>| -> bool {
            let d = xi as f64 - c;
            let used = q[i][i] * d * d;
            if used > rem {
                return false;
            }
            x[i] = xi;
            if i == 0 {
                out.push(x.clone());
            } else {
                rec(i - 1, rem - used, q, x, out);
            }
            true
        };
        if !visit(start, x, out) {
            x[i] = 0;
            return;
        }
        let mut up = start + 1;
        while visit(up, x, out) {
            up += 1;
        }
        let mut down = start - 1;
        while visit(down, x, out) {
            down -= 1;
        }
        x[i] = 0;
    }
    rec(n - 1, b, &q, &mut x, &mut out);
    let exact = |v: &Vec<i64>| {
        let mut s = int(0);
        for i in 0..n {
            for j in 0..n {
                s += gram[i][j] * int(v[i] * v[j]);
            }
        }
        s
    };
    out.retain(|v| exact(v) <= bound);
    out
}

fn enumerate_norm(gram: &Mat, norm: Rat) -> Vec<Vec<i64>> {
    let n = gram.len();
    let mut v = enumerate_up_to(gram, norm);
    v.retain(|v| {
        let mut s = int(0);
        for i in 0..n {
            for j in 0..n {
                s += gram[i][j] * int(v[i] * v[j]);
            }
        }
        s == norm
    });
    v.sort();
    v
}

/// `L_norm`, sorted.
pub fn shell(l: &Zzeta3Lattice, norm: Rat) -> Shell {
    if norm < int(0) {
        return Shell { norm, vectors: Vec::new() };
    }
    Shell { norm, vectors: enumerate_norm(&l.gram, norm) }
}

pub fn shell_count(l: &Zzeta3Lattice, norm: Rat) -> usize {
    shell(l, norm).vectors.len()
}

/// Fiber sizes of a residue map on `L_min`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCensus {
    pub vectors: usize,
    pub sizes: Vec<usize>,
    pub zero_hit: bool,
}

impl ResidueCensus {
    fn from_keys<K: Ord>(keys: Vec<K>, zero: &K) -> ResidueCensus {
        let vectors = keys.len();
        let zero_hit = keys.iter().any(|k| k == zero);
        let mut m: BTreeMap<K, usize> = BTreeMap::new();
        for k in keys {
            *m.entry(k).or_insert(0) += 1;
        }
        let mut sizes: Vec<usize> = m.into_values().collect();
        sizes.sort();
        ResidueCensus { vectors, sizes, zero_hit }
    }

    pub fn classes(&self) -> usize {
        self.sizes.len()
    }

    /// Every fiber has exactly `m` elements.
    pub fn is_uniform(&self, m: usize) -> bool {
        self.sizes.iter().all(|&s| s == m)
    }
}

/// `L_min -> L / 2L`.
pub fn mod2_fibers(l: &Zzeta3Lattice) -> ResidueCensus {
    let sh = shell(l, l.min_norm);
    let keys: Vec<Vec<i64>> = sh.vectors.iter().map(|v| v.iter().map(|x| x.mod_floor(&2)).collect()).collect();
    ResidueCensus::from_keys(keys, &vec![0; l.rank])
}

/// `L_min -> L / sqrt(-3) L`.
pub fn mod_sqrt3_fibers(l: &Zzeta3Lattice) -> ResidueCensus {
    let n = l.rank;
    let s: Mat = (0..n).map(|i| (0..n).map(|j| int(i64::from(i == j) + 2 * l.zeta[i][j])).collect()).collect();
    let si = inverse(&s);
    let sh = shell(l, l.min_norm);
    let key = |v: &[i64]| -> Vec<Rat> {
        (0..n)
            .map(|i| {
                let x: Rat = (0..n).map(|j| si[i][j] * int(v[j])).fold(int(0), |a, b| a + b);
                x - x.floor()
            })
            .collect()
    };
    let keys: Vec<Vec<Rat>> = sh.vectors.iter().map(|v| key(v)).collect();
    ResidueCensus::from_keys(keys, &vec![int(0); n])
}

/// Checks `v = sqrt(-3) v mod 2L` on random vectors.
pub fn sqrt3_congruence_holds(l: &Zzeta3Lattice, samples: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let v: Vec<i64> = (0..l.rank).map(|_| (rng.next_u64() % 21) as i64 - 10).collect();
        let w = l.sqrt_minus3_apply(&v);
        v.iter().zip(w).all(|(a, b)| (a - b) % 2 == 0)
    })
}

/// A solution of `2^x - 2^y - 2^z = 3^v - 3^w > 0` with `y > z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PillaiSolution {
    pub value: u128,
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub v: u32,
    pub w: u32,
}

/// Positive-integer solutions with all exponents at most `max_exp`,
/// excluding `y = z` and `x in {y + 1, z + 1}`, listed with `y > z`.
pub fn pillai_search(max_exp: u32) -> Vec<PillaiSolution> {
    assert!(max_exp <= 64);
    let mut threes: BTreeMap<u128, Vec<(u32, u32)>> = BTreeMap::new();
    for v in 1..=max_exp {
        for w in 1..v {
            threes.entry(3u128.pow(v) - 3u128.pow(w)).or_default().push((v, w));
        }
    }
    let mut out = Vec::new();
    for x in 1..=max_exp {
        for y in 1..x {
            for z in 1..y {
                if x == y + 1 || x == z + 1 {
                    continue;
                }
                let s = 2u128.pow(y) + 2u128.pow(z);
                let two = 2u128.pow(x);
                if two <= s {
                    continue;
                }
                if let Some(vs) = threes.get(&(two - s)) {
                    for &(v, w) in vs {
                        out.push(PillaiSolution { value: two - s, x, y, z, v, w });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// The five identities, each side recomputed, and the lattice shells.
pub fn pillai_check() -> Report {
    let mut rep = Report::new("exponential identities");
    let p2 = |e: u32| 2i128.pow(e);
    let p3 = |e: u32| 3i128.pow(e);
    let rows: [(i128, i128, i128, LatticeName, Rat); 5] = [
        (6, p2(3) - p2(1), p3(2) - p3(1), LatticeName::A2Dual, rat(2, 3)),
        (24, p2(5) - p2(3), p3(3) - p3(1), LatticeName::D4Dual, int(1)),
        (240, p2(8) - p2(4), p3(5) - p3(1), LatticeName::E8, int(2)),
        (54, p2(6) - p2(3) - p2(1), p3(4) - p3(3), LatticeName::E6Dual, rat(4, 3)),
        (72, p2(6) + p2(3), p3(4) - p3(2), LatticeName::E6Dual, int(2)),
    ];
    for (n, two, three, lat, norm) in rows {
        rep.check(&format!("{n}: powers of 2"), two, Relation::Eq, n, 1);
        rep.check(&format!("{n}: powers of 3"), three, Relation::Eq, n, 1);
        let l = standard_lattice(lat);
        let normstr = if norm.is_integer() { format!("{}", norm) } else { format!("{}/{}", norm.numer(), norm.denom()) };
        rep.check(&format!("{n}: {} shell at norm {normstr}", lat.name()), shell_count(&l, norm) as i128, Relation::Eq, n, 1);
    }
    rep.check("216: powers of 2", p2(8) - p2(5) - p2(3), Relation::Eq, 216, 1);
    rep.check("216: powers of 3", p3(5) - p3(3), Relation::Eq, 216, 1);
    rep.record("216: 2^8 - 2^5 - 2^4", p2(8) - p2(5) - p2(4), Relation::Eq, 216, 1);
    rep.note("2^8 - 2^5 - 2^4 = 208; the 216 identity holds with 2^8 - 2^5 - 2^3");
    rep.finish()
}
