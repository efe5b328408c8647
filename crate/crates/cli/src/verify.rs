use anyhow::Result;

use steenrod_core::steenrod_classical::run_lemma_suite;

use crate::{context, SpaceArgs};

const LEMMA_TRIALS: usize = 20;
const LEMMA_SEED: u64 = 0x5eed;

/// The randomized lemma drivers over the prime of `args`; the space only fixes the field.
pub(crate) fn lemmas(args: &SpaceArgs, n_max: usize) -> Result<bool> {
    let ctx = context(args)?;
    let report = run_lemma_suite(ctx.field(), LEMMA_SEED, LEMMA_TRIALS, n_max)?;
    let rows = [
        ("theta representative independence", report.representative_independence),
        ("reduced cohomology of free complexes", report.free_reduced_vanishes),
        ("transfer on trivial complexes", report.transfer_vanishes),
        ("sum to product, two summands", report.sum_to_product_two),
        ("sum to product, three summands", report.sum_to_product_three),
        ("reduced theta linearity", report.theta_linearity),
    ];
    if args.json {
        let value: serde_json::Map<String, serde_json::Value> = rows
            .iter()
            .map(|(name, c)| (name.to_string(), serde_json::json!({"passed": c, "trials": report.trials})))
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "prime": report.prime,
                "lemmas": value,
                "seed": LEMMA_SEED,
                "failures": report.failures.iter().map(|(l, t)| serde_json::json!({"lemma": l, "trial": t})).collect::<Vec<_>>(),
                "verdict": report.passed(),
            }))?
        );
    } else {
        for (name, c) in rows {
            let tag = if c == report.trials { "PASS" } else { "FAIL" };
            println!("{tag} {name}: {c}/{}", report.trials);
        }
        for (lemma, trial) in &report.failures {
            println!("witness: {lemma} fails on trial {trial} of seed {LEMMA_SEED:#x}");
        }
    }
    Ok(report.passed())
}

/// The uniqueness condition on the diagonal image in every total degree up to `degree`.
pub(crate) fn uniqueness(args: &SpaceArgs, degree: Option<usize>) -> Result<bool> {
    let ctx = context(args)?;
    let top = degree.unwrap_or(ctx.space().cap());
    let mut results = Vec::new();
    for m in 0..=top {
        results.push((m, ctx.uniqueness_check(m)?));
    }
    let ok = results.iter().all(|(_, r)| *r);
    if args.json {
        let value: Vec<_> = results.iter().map(|(m, r)| serde_json::json!({"degree": m, "unique": r})).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({"prime": args.prime, "degrees": value, "verdict": ok}))?
        );
    } else {
        for (m, r) in &results {
            println!("{} degree {m}", if *r { "PASS" } else { "FAIL" });
        }
    }
    Ok(ok)
}
