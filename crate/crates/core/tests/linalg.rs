mod common;

use common::{matrix_of_rank, penrose_holds, q, rng, subspace, transversal_pair, Q};
use nilproj::linalg::{
    graph_projection, graph_subspace, is_transversal, kernel, moore_penrose, moore_penrose_svd,
    oblique_projection_direct, oblique_projection_mp, orthogonal_projection, range,
};
use nilproj::probe::{study, Grid};
use nilproj::{Matrix, Subspace, Vector};
use proptest::prelude::*;
use rand::Rng;

fn identity(m: usize) -> Matrix<Q> {
    Matrix::identity(m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn penrose_equations_hold_exactly(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..=6), r.gen_range(1..=6));
        let rank = r.gen_range(0..=rows.min(cols));
        let a = matrix_of_rank(&mut r, rows, cols, rank);
        let b = moore_penrose(&a);
        prop_assert_eq!(b.rows(), cols);
        prop_assert!(penrose_holds(&a, &b));
    }

    #[test]
    fn svd_pseudoinverse_matches_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..=6), r.gen_range(1..=6));
        let rank = r.gen_range(0..=rows.min(cols));
        let a = matrix_of_rank(&mut r, rows, cols, rank);
        let exact = moore_penrose(&a).to_f64();
        let float = moore_penrose_svd(&a.to_f64());
        prop_assert!(float.max_abs_diff(&exact) <= 1e-9 * exact.max_abs().max(1.0));
    }

    #[test]
    fn oblique_constructions_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.gen_range(2..=6);
        let d0 = r.gen_range(0..=m);
        let (u0, w) = transversal_pair(&mut r, m, d0);
        let e = oblique_projection_direct(&u0, &w).unwrap();
        prop_assert_eq!(&e, &oblique_projection_mp(&u0, &w).unwrap());
        prop_assert_eq!(e.mul(&e), e.clone());
        prop_assert_eq!(range(&e), u0.clone());
        prop_assert_eq!(kernel(&e), w.clone());
        let complement = identity(m).sub(&orthogonal_projection(&w));
        let k = kernel(&complement.mul(&orthogonal_projection(&u0)));
        prop_assert_eq!(k, u0.orthogonal_complement());
    }

    #[test]
    fn graph_projection_is_the_orthogonal_projection_onto_the_graph(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.gen_range(1..=6);
        let d0 = r.gen_range(0..=m);
        let u0 = subspace(&mut r, m, d0);
        let t = Matrix::from_fn(d0, m - d0, |_, _| common::rational(&mut r));
        let p = graph_projection(&t, &u0).unwrap();
        let g = graph_subspace(&t, &u0).unwrap();
        prop_assert_eq!(&p, &orthogonal_projection(&g));
        prop_assert!(p.is_symmetric());
        prop_assert_eq!(p.mul(&p), p.clone());
        prop_assert!(is_transversal(&u0, &g).unwrap());
    }
}

#[test]
fn examples() {
    let one = Matrix::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]], 2);
    let quarter = Matrix::from_fn(2, 2, |_, _| q(1, 4));
    assert_eq!(moore_penrose(&one), quarter);
    assert_eq!(moore_penrose(&identity(3)), identity(3));
    assert!(moore_penrose(&Matrix::<Q>::zeros(2, 3)).is_zero());

    let diag = Subspace::span(2, &[Vector::new(vec![q(1, 1), q(1, 1)])]).unwrap();
    assert_eq!(
        orthogonal_projection(&diag),
        Matrix::from_fn(2, 2, |_, _| q(1, 2))
    );
    assert_eq!(orthogonal_projection(&Subspace::<Q>::full(3)), identity(3));
    assert!(orthogonal_projection(&Subspace::<Q>::zero(3)).is_zero());

    let e1 = Subspace::span(2, &[common::unit(2, 1)]).unwrap();
    let e = oblique_projection_mp(&e1, &diag).unwrap();
    let expected = Matrix::from_rows(vec![vec![q(1, 1), q(-1, 1)], vec![q(0, 1), q(0, 1)]], 2);
    assert_eq!(e, expected);
    assert!(!is_transversal(&e1, &e1).unwrap());
}

#[test]
fn oblique_projection_is_smooth_along_a_rotating_line() {
    let u0 = Subspace::span(2, &[Vector::unit(2, 0)]).unwrap();
    let s = study(&Grid::new(0.1, 1.5, 32).unwrap(), |theta| {
        let w = Subspace::span(2, &[Vector::new(vec![theta.cos(), theta.sin()])])?;
        let e = oblique_projection_direct(&u0, &w)?;
        Ok(vec![e[(0, 0)], e[(0, 1)], e[(1, 0)], e[(1, 1)]])
    })
    .unwrap();
    assert!(s.smooth, "{s:?}");
    assert!(s.observed_order.unwrap() >= 1.7);
}
