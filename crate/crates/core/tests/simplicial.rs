use std::sync::Arc;

use steenrod_core::fp_linalg::PrimeField;
use steenrod_core::simplicial::builders::{bar_skeleton, circle, circle_wrap, from_simplicial_complex, sphere};
use steenrod_core::simplicial::{
    chain_complex, cohomology, DegeneracyWord, FiniteSimplicialSet, PowerSpace, SimplexRef, SimplicialMorphism,
    SimplicialOp,
};

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Normal form of a composite by the simplicial identities alone: faces are pushed
/// through degeneracies and evaluated on generators, degeneracies are sorted.
fn rewrite(x: &FiniteSimplicialSet, gen: u32, ops: &[SimplicialOp]) -> SimplexRef {
    // degeneracies listed outermost first; the simplex is `s_{d[0]} s_{d[1]} ... base`
    let mut degs: Vec<usize> = Vec::new();
    let mut base = gen;
    for op in ops.iter().rev() {
        match *op {
            SimplicialOp::Degeneracy(i) => {
                degs.insert(0, i);
            }
            SimplicialOp::Face(mut i) => {
                let mut k = 0;
                let mut cancelled = false;
                while k < degs.len() {
                    let j = degs[k];
                    if i < j {
                        degs[k] = j - 1;
                        k += 1;
                    } else if i == j || i == j + 1 {
                        degs.remove(k);
                        cancelled = true;
                        break;
                    } else {
                        i -= 1;
                        k += 1;
                    }
                }
                if !cancelled {
                    let face = x.generator_faces(base)[i];
                    degs.extend(face.word.indices());
                    base = face.gen;
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        let mut changed = true;
        while changed {
            changed = false;
            for k in 0..degs.len().saturating_sub(1) {
                if degs[k] <= degs[k + 1] {
                    let (i, j) = (degs[k], degs[k + 1]);
                    degs[k] = j + 1;
                    degs[k + 1] = i;
                    changed = true;
                }
            }
        }
    }
    let dim = x.generator(base).dim + degs.len();
    SimplexRef {
        dim: dim as u8,
        gen: base,
        word: DegeneracyWord::from_indices(&degs).unwrap(),
    }
}

#[test]
fn normalize_textbook_examples() {
    let x = bar_skeleton(2, 2).unwrap();
    let sigma = x.lookup("[1|1]").unwrap();
    let plain = x.simplex(sigma);
    use SimplicialOp::*;
    assert_eq!(x.normalize(sigma, &[Face(0), Degeneracy(0)]).unwrap(), plain);
    assert_eq!(x.normalize(sigma, &[Face(1), Degeneracy(0)]).unwrap(), plain);
    assert_eq!(
        x.normalize(sigma, &[Degeneracy(0), Degeneracy(0)]).unwrap(),
        x.normalize(sigma, &[Degeneracy(1), Degeneracy(0)]).unwrap()
    );
    assert!(x.normalize(sigma, &[Face(4), Degeneracy(1)]).is_err());
}

#[test]
fn normalize_agrees_with_rewriting() {
    use rand::{Rng, SeedableRng};
    let spaces = [bar_skeleton(3, 3).unwrap(), sphere(2).unwrap(), from_simplicial_complex(4, &[vec![0, 1, 2, 3]]).unwrap()];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for x in &spaces {
        for _ in 0..400 {
            let gen = rng.gen_range(0..x.generators().len()) as u32;
            let mut dim = x.generator(gen).dim;
            let mut ops = Vec::new();
            for _ in 0..rng.gen_range(0..6) {
                let op = if dim > 0 && rng.gen_bool(0.5) {
                    SimplicialOp::Face(rng.gen_range(0..=dim))
                } else if dim < 8 {
                    SimplicialOp::Degeneracy(rng.gen_range(0..=dim))
                } else {
                    continue;
                };
                dim = match op {
                    SimplicialOp::Face(_) => dim - 1,
                    SimplicialOp::Degeneracy(_) => dim + 1,
                };
                // ops are written left to right, the last one acts first
                ops.insert(0, op);
            }
            assert_eq!(x.normalize(gen, &ops).unwrap(), rewrite(x, gen, &ops), "ops {ops:?}");
        }
    }
}

/// Counts nondegenerate tuples by testing `c = s_i d_i c` on every coordinate.
fn brute_force_power_count(x: &FiniteSimplicialSet, p: usize, m: usize) -> usize {
    let simplices = x.simplices_of_dim(m);
    let total = simplices.len().pow(p as u32);
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let tuple: Vec<SimplexRef> = (0..p)
                .map(|_| {
                    let s = simplices[c % simplices.len()];
                    c /= simplices.len();
                    s
                })
                .collect();
            !(0..m).any(|i| tuple.iter().all(|&s| x.degeneracy(x.face(s, i), i) == s))
        })
        .count()
}

#[test]
fn power_counts_match_enumeration() {
    for (x, p, m_max) in [
        (bar_skeleton(2, 2).unwrap(), 2, 4),
        (circle(3).unwrap(), 3, 3),
        (bar_skeleton(3, 2).unwrap(), 3, 3),
        (sphere(2).unwrap(), 2, 4),
    ] {
        let power = PowerSpace::build(&x, f(p as u32), m_max, usize::MAX).unwrap();
        for m in 0..=m_max {
            assert_eq!(power.count(m), brute_force_power_count(&x, p, m), "degree {m}");
        }
    }
}

#[test]
fn power_euler_characteristic_is_multiplicative() {
    for (x, p) in [(bar_skeleton(2, 2).unwrap(), 2usize), (circle(2).unwrap(), 3), (sphere(2).unwrap(), 2)] {
        let top = x.cap() * p;
        let power = PowerSpace::build(&x, f(p as u32), top, usize::MAX).unwrap();
        let chi = |counts: &dyn Fn(usize) -> usize, top: usize| -> i64 {
            (0..=top).map(|d| if d % 2 == 0 { counts(d) as i64 } else { -(counts(d) as i64) }).sum()
        };
        let chi_x = chi(&|d| x.count(d), x.cap());
        assert_eq!(chi(&|d| power.count(d), top), chi_x.pow(p as u32));
    }
}

#[test]
fn power_cohomology_follows_kunneth() {
    let x = sphere(1).unwrap();
    let field = f(2);
    let power = PowerSpace::build(&x, field, 3, usize::MAX).unwrap();
    let betti: Vec<usize> = (0..=2)
        .map(|n| steenrod_core::simplicial::chain_cohomology(power.chains(), n).unwrap().dim())
        .collect();
    assert_eq!(betti, vec![1, 2, 1]);
}

#[test]
fn boundaries_square_to_zero() {
    for p in [2u32, 3] {
        for x in [bar_skeleton(p, 4).unwrap(), sphere(3).unwrap(), circle(4).unwrap()] {
            let c = chain_complex(&x, f(p), x.cap() + 1);
            assert!(c.boundary_squares_to_zero());
            let power = PowerSpace::build(&x, f(p), 3, usize::MAX).unwrap();
            assert!(power.chains().boundary_squares_to_zero());
        }
    }
}

#[test]
fn rotation_has_order_p_and_commutes_with_diagonal() {
    for p in [2u32, 3] {
        let x = bar_skeleton(p, 2).unwrap();
        let power = PowerSpace::build(&x, f(p), 3, usize::MAX).unwrap();
        for m in 0..=3 {
            let t = power.rotation_chain(m);
            assert_eq!(t.pow(p as usize), steenrod_core::fp_linalg::MatrixFp::identity(f(p), power.count(m)));
            let d = power.diagonal_chain(&x, m);
            assert_eq!(t.mul(&d), d);
            if m > 0 {
                assert_eq!(power.chains().boundary(m).mul(&t), power.rotation_chain(m - 1).mul(&power.chains().boundary(m)));
            }
        }
    }
}

#[test]
fn diagonal_is_a_chain_map() {
    let x = bar_skeleton(3, 3).unwrap();
    let field = f(3);
    let power = PowerSpace::build(&x, field, 3, usize::MAX).unwrap();
    let c = chain_complex(&x, field, 3);
    for m in 1..=3 {
        let lhs = power.chains().boundary(m).mul(&power.diagonal_chain(&x, m));
        let rhs = power.diagonal_chain(&x, m - 1).mul(&c.boundary(m));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn induced_maps_are_functorial() {
    let field = f(2);
    let wrap = circle_wrap(3, &[1]).unwrap();
    let id = SimplicialMorphism::identity(wrap.target().clone());
    let composite = wrap.then(&id).unwrap();
    assert_eq!(composite.induced_chain_map(field, 2), wrap.induced_chain_map(field, 2));

    let rp = Arc::new(bar_skeleton(2, 1).unwrap());
    let s1 = wrap.target().clone();
    let edge = rp.lookup("[1]").unwrap();
    let to_rp = SimplicialMorphism::new(
        s1.clone(),
        rp.clone(),
        s1.generators()
            .iter()
            .map(|g| if g.dim == 0 { SimplexRef::nondegenerate(0, 0) } else { SimplexRef::nondegenerate(edge, 1) })
            .collect(),
    )
    .unwrap();
    let both = wrap.then(&to_rp).unwrap();
    let a = wrap.induced_chain_map(field, 2);
    let b = to_rp.induced_chain_map(field, 2);
    let ab = both.induced_chain_map(field, 2);
    for m in 0..=2 {
        assert_eq!(ab[m], b[m].mul(&a[m]));
    }
}

#[test]
fn builtin_cohomology() {
    let betti = |x: &FiniteSimplicialSet, p: u32, top: usize| -> Vec<usize> {
        (0..=top).map(|n| cohomology(x, f(p), n).unwrap().dim()).collect()
    };
    assert_eq!(betti(&bar_skeleton(2, 3).unwrap(), 2, 3), vec![1, 1, 1, 1]);
    assert_eq!(betti(&bar_skeleton(3, 3).unwrap(), 3, 2), vec![1, 1, 1]);
    assert_eq!(betti(&bar_skeleton(3, 3).unwrap(), 2, 2), vec![1, 0, 0]);
    assert_eq!(betti(&sphere(3).unwrap(), 5, 3), vec![1, 0, 0, 1]);
    assert_eq!(betti(&circle(5).unwrap(), 3, 1), vec![1, 1]);
    let torus_like = from_simplicial_complex(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
    assert_eq!(betti(&torus_like, 2, 2), vec![1, 0, 1]);
}
