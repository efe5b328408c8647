//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use steenrod_core::cyclic_resolution::PeriodicResolution;
use steenrod_core::equivariant::CpComplex;
use steenrod_core::fp_linalg::{MatrixFp, PrimeField};
use steenrod_core::simplicial::builders::{bar_homomorphism, bar_skeleton, circle, circle_wrap, disjoint_union};
use steenrod_core::simplicial::{
    chain_complex, FiniteSimplicialSet, PowerSpace, SimplexRef, SimplicialMorphism, DEFAULT_PRODUCT_LIMIT,
};
use steenrod_core::steenrod_classical::{classical_sigma, run_lemma_suite, shuffle_cross, TensorPower};
use steenrod_core::steenrod_diagonal::{naturality_check, SteenrodContext};
use steenrod_core::Result;

use common::{bockstein, cup_classes};

/// Wall-clock budget for the full odd-prime computation on the Z/3 4-skeleton.
const ODD_PRIME_BUDGET: Duration = Duration::from_secs(15 * 60);
/// The resource guard must admit at least this many product simplices per degree.
const GUARD_FLOOR: usize = 100_000;
/// Randomized complexes per field for each lemma driver.
const LEMMA_TRIALS: usize = 20;
const LEMMA_SEED: u64 = 2024;
/// Highest total degree whose uniqueness is checked on the Z/3 4-skeleton.
const ODD_UNIQUENESS_DEGREE: usize = 3;
/// Highest class degree solved on the Z/3 4-skeleton.
const ODD_CLASS_DEGREE: usize = 1;

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).expect("supported prime")
}

fn context(x: FiniteSimplicialSet, p: u32) -> SteenrodContext {
    SteenrodContext::new(Arc::new(x), field(p), DEFAULT_PRODUCT_LIMIT).with_cache()
}

fn unit(dim: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn is_zero(v: &[u8]) -> bool {
    v.iter().all(|&c| c == 0)
}

struct Spaces {
    rp2: SteenrodContext,
    rp3: SteenrodContext,
    lens: SteenrodContext,
}

fn diagonal_matches_classical(s: &Spaces) -> Result<bool> {
    let mut ok = true;
    for ctx in [&s.rp2, &s.rp3] {
        for n in 0..=ctx.space().cap().min(3) {
            let dim = ctx.cohomology(n)?.dim();
            for i in 0..dim {
                for k in 0..=n + 1 {
                    let a = ctx.sigma(n, &unit(dim, i), k)?;
                    let b = classical_sigma(ctx, n, &unit(dim, i), k)?;
                    if a != b {
                        println!("    mismatch on the {}-skeleton at class {n}:{i}, k = {k}: {a:?} vs {b:?}", ctx.space().cap());
                        ok = false;
                    }
                }
            }
        }
    }
    Ok(ok)
}

fn projective_values(s: &Spaces) -> Result<bool> {
    let x = s.rp2.space();
    let x_squared = cup_classes(x, field(2), 1, &[1], 1, &[1]);
    let mut ok = s.rp2.sigma(1, &[1], 0)? == vec![1];
    ok &= !is_zero(&x_squared) && s.rp2.sigma(1, &[1], 1)? == x_squared;
    for k in 2..=4 {
        ok &= is_zero(&s.rp2.sigma(1, &[1], k)?);
    }
    // Cartan: Sq^1(x^2) = 2 x Sq^1 x = 0, while Sq^0 fixes x^2 and Sq^2(x^2) = x^4 vanishes in the 3-skeleton
    let y = s.rp3.space();
    let x2 = cup_classes(y, field(2), 1, &[1], 1, &[1]);
    ok &= !is_zero(&x2);
    ok &= s.rp3.sigma(2, &x2, 0)? == x2;
    ok &= is_zero(&s.rp3.sigma(2, &x2, 1)?);
    let x3 = cup_classes(y, field(2), 2, &x2, 1, &[1]);
    ok &= !is_zero(&x3) && s.rp3.sigma(1, &[1], 1)? == x2;
    Ok(ok)
}

fn odd_prime_values(s: &Spaces) -> Result<bool> {
    let start = Instant::now();
    let ctx = &s.lens;
    let f = ctx.field();
    let mut ok = ctx.cohomology(1)?.dim() == 1;
    for u in [[1u8], [2u8]] {
        let minus_beta: Vec<u8> = bockstein(ctx.space(), f, 1, &u).iter().map(|&c| f.neg(c)).collect();
        ok &= !is_zero(&minus_beta);
        ok &= ctx.sigma(1, &u, 0)? == u.to_vec();
        let diag = ctx.sigma(1, &u, 1)?;
        ok &= diag == classical_sigma(ctx, 1, &u, 1)? && diag == minus_beta;
        for k in 2..=4 {
            ok &= is_zero(&ctx.sigma(1, &u, k)?);
        }
    }
    let elapsed = start.elapsed();
    println!("    elapsed {:.1}s of {}s; guard limit {DEFAULT_PRODUCT_LIMIT}", elapsed.as_secs_f64(), ODD_PRIME_BUDGET.as_secs());
    Ok(ok && elapsed <= ODD_PRIME_BUDGET && ctx.limit() >= GUARD_FLOOR)
}

fn uniqueness(s: &Spaces) -> Result<bool> {
    let mut ok = true;
    for ctx in [&s.rp2, &s.rp3] {
        for m in 0..=2 * ctx.space().cap() {
            ok &= ctx.uniqueness_check(m)?;
        }
    }
    for m in 0..=ODD_UNIQUENESS_DEGREE {
        ok &= s.lens.uniqueness_check(m)?;
    }
    Ok(ok)
}

fn unique_solutions(s: &Spaces) -> Result<bool> {
    let rows = s.rp2.operation_table(2)?.len() + s.rp3.operation_table(3)?.len() + s.lens.operation_table(ODD_CLASS_DEGREE)?.len();
    Ok(rows > 0)
}

fn circle_to_real_line(source: Arc<FiniteSimplicialSet>, target: Arc<FiniteSimplicialSet>) -> Result<SimplicialMorphism> {
    let edge = target.lookup("[1]").expect("bar edge");
    let images = source
        .generators()
        .iter()
        .map(|g| if g.dim == 0 { SimplexRef::nondegenerate(0, 0) } else { SimplexRef::nondegenerate(edge, 1) })
        .collect();
    SimplicialMorphism::new(source, target, images)
}

fn naturality(s: &Spaces) -> Result<bool> {
    let mut ok = true;
    let s1 = Arc::new(circle(2)?);
    let rp1 = Arc::new(bar_skeleton(2, 1)?);
    let quotient = circle_to_real_line(s1.clone(), rp1.clone())?;
    let y = context((*rp1).clone(), 2);
    for k in 0..=1 {
        ok &= naturality_check(&context((*s1).clone(), 2), &y, &[(quotient.clone(), 1)], 1, k)?.passed();
    }
    let wrap = circle_wrap(3, &[2])?;
    let composite = wrap.then(&circle_to_real_line(wrap.target().clone(), rp1.clone())?)?;
    ok &= naturality_check(&context((**wrap.source()).clone(), 2), &y, &[(composite, 1)], 1, 0)?.passed();
    let rp2 = Arc::new((**s.rp2.space()).clone());
    let rp3 = Arc::new((**s.rp3.space()).clone());
    let inclusion = bar_homomorphism(rp2, rp3, 2, 2, 1)?;
    ok &= naturality_check(&s.rp2, &s.rp3, &[(inclusion, 1)], 1, 1)?.passed();

    for p in [2u32, 3] {
        let degree_three = circle_wrap(3, &[])?;
        let degree_two = circle_wrap(3, &[0])?;
        let x = context((**degree_three.source()).clone(), p);
        let y = context((**degree_three.target()).clone(), p);
        ok &= naturality_check(&x, &y, &[(degree_three.clone(), 1)], 1, 0)?.passed();
        ok &= naturality_check(&x, &y, &[(degree_three, 1), (degree_two, 2)], 1, 0)?.passed();
    }
    let l = Arc::new(bar_skeleton(3, 3)?);
    let lc = context((*l).clone(), 3);
    let times_two = bar_homomorphism(l.clone(), l.clone(), 3, 3, 2)?;
    let identity = SimplicialMorphism::identity(l);
    for k in 0..=2 {
        ok &= naturality_check(&lc, &lc, &[(times_two.clone(), 1)], 1, k)?.passed();
        ok &= naturality_check(&lc, &lc, &[(times_two.clone(), 1), (identity.clone(), 2)], 1, k)?.passed();
    }
    Ok(ok)
}

fn lemmas() -> Result<bool> {
    let mut ok = true;
    for p in [2u32, 3] {
        let r = run_lemma_suite(field(p), LEMMA_SEED, LEMMA_TRIALS, 2)?;
        println!(
            "    F_{p}: representatives {}/{t}, free {}/{t}, transfer {}/{t}, sum-to-product {}/{t} and {}/{t}, linearity {}/{t}",
            r.representative_independence,
            r.free_reduced_vanishes,
            r.transfer_vanishes,
            r.sum_to_product_two,
            r.sum_to_product_three,
            r.theta_linearity,
            t = r.trials
        );
        ok &= r.trials >= 20 && r.passed();
    }
    Ok(ok)
}

fn structure() -> Result<bool> {
    let mut ok = true;
    for p in [2u32, 3] {
        let f = field(p);
        let x = bar_skeleton(p, 3)?;
        ok &= chain_complex(&x, f, 4).boundary_squares_to_zero();
        let power = PowerSpace::build(&x, f, 4, DEFAULT_PRODUCT_LIMIT)?;
        ok &= power.chains().boundary_squares_to_zero();
        let a = CpComplex::power(&power);
        for m in 0..3 {
            ok &= a.total_differential(m + 1)?.mul(&a.total_differential(m)?).is_zero();
        }
        let base = chain_complex(&x, f, 4);
        let tensor = TensorPower::build(&base, 3, DEFAULT_PRODUCT_LIMIT)?;
        let xi = shuffle_cross(&x, &tensor, &power, 3);
        for m in 0..=3 {
            let t = power.rotation_chain(m);
            ok &= t.pow(p as usize) == MatrixFp::identity(f, power.count(m));
            ok &= tensor.complex().action(m).pow(p as usize) == MatrixFp::identity(f, tensor.dim(m));
            let d = power.diagonal_chain(&x, m);
            ok &= t.mul(&d) == d;
            ok &= xi[m].mul(tensor.complex().action(m)) == t.mul(&xi[m]);
        }
    }
    for p in [2u32, 3, 5] {
        ok &= PeriodicResolution::new(field(p), 8).verify_exactness().passed();
    }
    Ok(ok)
}

fn linearity() -> Result<bool> {
    let mut ok = true;
    for p in [2u32, 3] {
        let f = field(p);
        let a = bar_skeleton(p, 2)?;
        let ctx = context(disjoint_union(&[&a, &a])?, p);
        let vectors: Vec<Vec<u8>> = (0..p as u8).flat_map(|s| (0..p as u8).map(move |t| vec![s, t])).collect();
        for k in 0..p as usize {
            for u in &vectors {
                for v in &vectors {
                    let sum: Vec<u8> = u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect();
                    let su = ctx.sigma(1, u, k)?;
                    let sv = ctx.sigma(1, v, k)?;
                    let rhs: Vec<u8> = su.iter().zip(&sv).map(|(&a, &b)| f.add(a, b)).collect();
                    ok &= ctx.sigma(1, &sum, k)? == rhs;
                }
            }
        }
    }
    Ok(ok)
}

fn main() {
    let spaces = Spaces {
        rp2: context(bar_skeleton(2, 2).expect("bar model"), 2),
        rp3: context(bar_skeleton(2, 3).expect("bar model"), 2),
        lens: context(bar_skeleton(3, 4).expect("bar model"), 3),
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Result<bool> + '_>)> = vec![
        ("diagonal and classical operations agree at p = 2", Box::new(|| diagonal_matches_classical(&spaces))),
        ("known values on the projective models", Box::new(|| projective_values(&spaces))),
        ("odd-prime values on the Z/3 4-skeleton", Box::new(|| odd_prime_values(&spaces))),
        ("uniqueness of the diagonal image", Box::new(|| uniqueness(&spaces))),
        ("unique solution for every basis class", Box::new(|| unique_solutions(&spaces))),
        ("naturality for quotients, degree maps and combinations", Box::new(|| naturality(&spaces))),
        ("lemma drivers on random complexes over F_2 and F_3", Box::new(lemmas)),
        ("structural identities and resolution exactness", Box::new(structure)),
        ("additivity of the operations", Box::new(linearity)),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(true) => println!("PASS [{}] {name} ({secs:.1}s)", i + 1),
            Ok(false) => {
                failures += 1;
                println!("FAIL [{}] {name} ({secs:.1}s)", i + 1);
            }
            Err(e) => {
                failures += 1;
                println!("FAIL [{}] {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
