#![allow(dead_code)]

use nilproj::catalog::{abelian, five_dim_example, threadlike, CatalogEntry};
use nilproj::{Rational, Subspace, Vector};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Small rational `p/q` with `|p| <= 9`, `1 <= q <= 5`.
pub fn rational(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn vector(rng: &mut ChaCha8Rng, m: usize) -> Vector<Q> {
    Vector::new((0..m).map(|_| rational(rng)).collect())
}

/// Vector with roughly half of its coordinates zero.
pub fn sparse_vector(rng: &mut ChaCha8Rng, m: usize) -> Vector<Q> {
    Vector::new(
        (0..m)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    q(0, 1)
                } else {
                    rational(rng)
                }
            })
            .collect(),
    )
}

/// Random subspace of dimension `d`, sparse enough to land in many cells.
pub fn subspace(rng: &mut ChaCha8Rng, m: usize, d: usize) -> Subspace<Q> {
    loop {
        let vs: Vec<_> = (0..d).map(|_| sparse_vector(rng, m)).collect();
        if let Ok(w) = Subspace::from_basis(m, &vs) {
            return w;
        }
    }
}

pub fn unit(m: usize, k: usize) -> Vector<Q> {
    Vector::unit(m, k - 1)
}

/// abelian(4), threadlike(3..=6) and the five-dimensional example.
pub fn catalog_algebras() -> Vec<CatalogEntry<Q>> {
    let mut out = vec![CatalogEntry::from_algebra(abelian(4).unwrap())];
    out.extend((3..=6).map(|m| threadlike(m).unwrap()));
    out.push(five_dim_example());
    out
}

use nilproj::grassmann::{Flag, JumpSet};
use nilproj::Matrix;

/// Random invertible flag basis.
pub fn flag(rng: &mut ChaCha8Rng, m: usize) -> Flag<Q> {
    loop {
        let vs: Vec<_> = (0..m).map(|_| vector(rng, m)).collect();
        if let Ok(f) = Flag::new(vs) {
            return f;
        }
    }
}

/// Upper-triangular factor with positive diagonal, so `LᵀL` is positive definite.
pub fn metric_factor(rng: &mut ChaCha8Rng, m: usize) -> Matrix<Q> {
    Matrix::from_fn(m, m, |i, j| {
        if i == j {
            q(rng.gen_range(1..=4), rng.gen_range(1..=3))
        } else if i < j {
            rational(rng)
        } else {
            q(0, 1)
        }
    })
}

/// `β(W)` obtained independently: for `i ∈ ∁e` solve
/// `X_i + Σ_{j ∈ e} c_j X_j ∈ W` directly.
pub fn beta_oracle(flag: &Flag<Q>, e: &JumpSet, w: &Subspace<Q>) -> Vec<Vector<Q>> {
    let m = flag.dim();
    (1..=m)
        .map(|i| {
            let x = flag.vector(i).clone();
            if e.contains(i) {
                return x;
            }
            let jumps: Vec<_> = e.iter().collect();
            // [B_W | X_j ...] (a, c) = X_i, so X_i - Σ c_j X_j ∈ W.
            let mut cols = w.basis();
            cols.extend(jumps.iter().map(|&j| flag.vector(j).clone()));
            let sol = Matrix::from_columns(m, &cols)
                .solve(&x)
                .expect("X_i lies in W + U_e");
            let mut y = x;
            for (k, &j) in jumps.iter().enumerate() {
                y.axpy(&-sol[w.dim() + k].clone(), flag.vector(j));
            }
            y
        })
        .collect()
}

/// Subalgebras used by the projection suites: the flag ideals, the algebra
/// generated by a few random sparse vectors, and `𝔥_z` where defined.
pub fn subalgebras(
    rng: &mut ChaCha8Rng,
    entry: &CatalogEntry<Q>,
    random: usize,
) -> Vec<Subspace<Q>> {
    let m = entry.dim();
    let mut out: Vec<Subspace<Q>> = (0..=m).map(|k| entry.flag.subspace(k)).collect();
    for _ in 0..random {
        let k = rng.gen_range(1..=2);
        let gens: Vec<_> = (0..k).map(|_| sparse_vector(rng, m)).collect();
        out.push(entry.algebra.subalgebra_generated_by(&gens).unwrap());
    }
    if let Ok(h) = entry.hz_subalgebra(&nilproj::catalog::CirclePoint::from_tan_half(&q(1, 2))) {
        out.push(h);
    }
    out
}

/// Random `rows × cols` matrix of rank at most `rank`, as a product of two
/// random factors.
pub fn matrix_of_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize, rank: usize) -> Matrix<Q> {
    let c = Matrix::from_fn(rows, rank, |_, _| rational(rng));
    let f = Matrix::from_fn(rank, cols, |_, _| rational(rng));
    c.mul(&f)
}

/// Random transversal pair `(U0, W)` with `dim U0 = d0`.
pub fn transversal_pair(rng: &mut ChaCha8Rng, m: usize, d0: usize) -> (Subspace<Q>, Subspace<Q>) {
    loop {
        let u0 = subspace(rng, m, d0);
        let w = subspace(rng, m, m - d0);
        if nilproj::linalg::is_transversal(&u0, &w).unwrap() {
            return (u0, w);
        }
    }
}

/// All four Penrose equations, exactly.
pub fn penrose_holds(a: &Matrix<Q>, b: &Matrix<Q>) -> bool {
    let ab = a.mul(b);
    let ba = b.mul(a);
    ab.mul(a) == *a && ba.mul(b) == *b && ab.is_symmetric() && ba.is_symmetric()
}
