//! Independent cohomology oracles shared by the integration tests.

use steenrod_core::fp_linalg::{PrimeField, SparseVec};
use steenrod_core::simplicial::{cohomology, FiniteSimplicialSet};

/// Alexander–Whitney cup product of cochains on nondegenerate simplices.
pub fn cup(x: &FiniteSimplicialSet, field: PrimeField, i: usize, u: &SparseVec, j: usize, v: &SparseVec) -> SparseVec {
    let entries = x.generators_of_dim(i + j).iter().enumerate().filter_map(|(col, &g)| {
        let s = x.simplex(g);
        let front_theta: Vec<u8> = (0..=i as u8).collect();
        let back_theta: Vec<u8> = (i as u8..=(i + j) as u8).collect();
        let front = x.apply(s, &front_theta);
        let back = x.apply(s, &back_theta);
        if front.is_degenerate() || back.is_degenerate() {
            return None;
        }
        let value = field.mul(u.get(x.position(front.gen)), v.get(x.position(back.gen)));
        Some((col, value as i64))
    });
    SparseVec::from_entries(field, entries)
}

/// Cup product of cohomology classes in coordinates.
pub fn cup_classes(x: &FiniteSimplicialSet, field: PrimeField, i: usize, a: &[u8], j: usize, b: &[u8]) -> Vec<u8> {
    let hi = cohomology(x, field, i).unwrap();
    let hj = cohomology(x, field, j).unwrap();
    let hij = cohomology(x, field, i + j).unwrap();
    let prod = cup(x, field, i, &hi.representative(a), j, &hj.representative(b));
    hij.coordinates(&prod).expect("cup of cocycles is a cocycle")
}

/// Integral Bockstein: lift to integers, take the coboundary, divide by `p`.
pub fn bockstein(x: &FiniteSimplicialSet, field: PrimeField, n: usize, class: &[u8]) -> Vec<u8> {
    let p = field.p() as i64;
    let hn = cohomology(x, field, n).unwrap();
    let rep = hn.representative(class);
    let lifted: Vec<i64> = (0..x.count(n)).map(|k| rep.get(k) as i64).collect();
    let entries: Vec<(usize, i64)> = x
        .generators_of_dim(n + 1)
        .iter()
        .enumerate()
        .map(|(col, &g)| {
            let s = x.simplex(g);
            let total: i64 = (0..=n + 1)
                .map(|i| {
                    let face = x.face(s, i);
                    if face.is_degenerate() {
                        0
                    } else {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        sign * lifted[x.position(face.gen)]
                    }
                })
                .sum();
            assert_eq!(total % p, 0, "reduction of an integral cocycle lift");
            (col, total / p)
        })
        .collect();
    let h = cohomology(x, field, n + 1).unwrap();
    h.coordinates(&SparseVec::from_entries(field, entries)).unwrap()
}
