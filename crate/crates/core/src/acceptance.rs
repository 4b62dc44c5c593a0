//! The acceptance battery: twelve property/witness checks bundling the
//! engine's headline facts. Used both by the `reproduce-paper` CLI command
//! and by the acceptance integration test.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adic::enumerate_moduli;
use crate::config::SearchConfig;
use crate::heisenberg::{
    enumerate_elements, h_comm, h_mul, switch_iso, to_ut3, BiadditiveMap, HeisenbergElement,
};
use crate::report::Verdict;
use crate::ring::{RingElem, RingSpec};
use crate::topology::deciders::{
    decide_cokey, decide_cominimal, decide_injkey, decide_key, decide_relatively_minimal,
    enumerate_family, merson_exhaustive, restriction_map_table,
};
use crate::topology::oracle::{certify_extension, validate};
use crate::topology::triples::{is_minimal_map, is_strongly_minimal_map, TopologyTriple};
use crate::topology::{GradedAdicTopology, InducedTopology};
use crate::ut::{commutator_identity, SubgroupSpec, UTMatrix};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn run(id: usize, name: &'static str, f: impl FnOnce() -> Result<String, String>) -> CriterionResult {
    match f() {
        Ok(detail) => CriterionResult {
            id,
            name,
            passed: true,
            detail,
        },
        Err(detail) => CriterionResult {
            id,
            name,
            passed: false,
            detail,
        },
    }
}

fn all_rings() -> Vec<RingSpec> {
    vec![
        RingSpec::Integers,
        RingSpec::Residues(4),
        RingSpec::Residues(6),
        RingSpec::Residues(9),
    ]
}

fn random_scalar(ring: RingSpec, rng: &mut ChaCha8Rng) -> RingElem {
    let v = match ring {
        RingSpec::Integers => rng.gen_range(-9i64..=9),
        RingSpec::Residues(m) => rng.gen_range(0..m) as i64,
    };
    RingElem::new(ring, v)
}

fn criterion_1() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checked = 0u64;
    for n in [3usize, 4, 5] {
        for ring in all_rings() {
            for _ in 0..1000 {
                let m = UTMatrix::random(n, ring, &mut rng, 9);
                let x = random_scalar(ring, &mut rng);
                // random strictly increasing triple of indices
                let (i, j, k) = loop {
                    let mut idx = [
                        rng.gen_range(1..=n),
                        rng.gen_range(1..=n),
                        rng.gen_range(1..=n),
                    ];
                    idx.sort_unstable();
                    if idx[0] < idx[1] && idx[1] < idx[2] {
                        break (idx[0], idx[1], idx[2]);
                    }
                };
                for variant in [1u8, 2] {
                    let (lhs, rhs, equal) = commutator_identity(variant, &m, &x, i, j, k)
                        .map_err(|e| format!("variant {variant}: {e}"))?;
                    if !equal {
                        return Err(format!(
                            "variant {variant} broke at n={n}, ring {ring}: {lhs} != {rhs}"
                        ));
                    }
                }
                let (lhs, rhs, equal) =
                    commutator_identity(3, &m, &x, n - 2, n - 1, n).map_err(|e| e.to_string())?;
                if !equal {
                    return Err(format!("variant 3 broke at n={n}, ring {ring}: {lhs} != {rhs}"));
                }
                checked += 3;
            }
        }
    }
    Ok(format!("{checked} identity instances verified exactly"))
}

fn criterion_2() -> Result<String, String> {
    // full finite domain
    let w4 = BiadditiveMap::multiplication(RingSpec::Residues(4));
    let all = enumerate_elements(&w4, 1 << 10).map_err(|e| e.to_string())?;
    let images: std::collections::BTreeSet<UTMatrix> = all
        .iter()
        .map(|u| to_ut3(u, &w4).unwrap())
        .collect();
    if images.len() != all.len() {
        return Err("the degree-3 map is not injective on the finite domain".into());
    }
    for u in &all {
        for v in &all {
            let lhs = to_ut3(&h_mul(u, v, &w4).unwrap(), &w4).unwrap();
            let rhs = to_ut3(u, &w4).unwrap().mul(&to_ut3(v, &w4).unwrap()).unwrap();
            if lhs != rhs {
                return Err(format!("homomorphism broke at {u}, {v}"));
            }
            // closed-form commutator is compared against the product form
            // inside h_comm
            h_comm(u, v, &w4).map_err(|e| e.to_string())?;
        }
    }
    // random integer pairs
    let wz = BiadditiveMap::multiplication(RingSpec::Integers);
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..1000 {
        let u = HeisenbergElement::random(&wz, &mut rng, 9);
        let v = HeisenbergElement::random(&wz, &mut rng, 9);
        let lhs = to_ut3(&h_mul(&u, &v, &wz).unwrap(), &wz).unwrap();
        let rhs = to_ut3(&u, &wz).unwrap().mul(&to_ut3(&v, &wz).unwrap()).unwrap();
        if lhs != rhs {
            return Err(format!("integer homomorphism broke at {u}, {v}"));
        }
        h_comm(&u, &v, &wz).map_err(|e| e.to_string())?;
    }
    Ok("bijective homomorphism on 64 finite elements and 1000 integer pairs".into())
}

fn criterion_3() -> Result<String, String> {
    let w = BiadditiveMap::multiplication(RingSpec::Residues(4));
    let all = enumerate_elements(&w, 1 << 10).map_err(|e| e.to_string())?;
    let mut center = Vec::new();
    'outer: for u in &all {
        for v in &all {
            if h_mul(u, v, &w).unwrap() != h_mul(v, u, &w).unwrap() {
                continue 'outer;
            }
        }
        center.push(u.clone());
    }
    let expected: Vec<&HeisenbergElement> = all
        .iter()
        .filter(|u| u.x.iter().all(num_traits::Zero::is_zero) && u.f.iter().all(num_traits::Zero::is_zero))
        .collect();
    if center.len() == expected.len()
        && center.iter().all(|u| expected.contains(&u))
    {
        Ok(format!("brute-force center has exactly the {} central slots", center.len()))
    } else {
        Err(format!(
            "center mismatch: {} computed vs {} expected",
            center.len(),
            expected.len()
        ))
    }
}

fn criterion_4() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for ring in [RingSpec::Integers, RingSpec::Residues(5)] {
        let w = BiadditiveMap::multiplication(ring);
        let back = w.switched();
        for _ in 0..100 {
            let u = HeisenbergElement::random(&w, &mut rng, 9);
            let v = HeisenbergElement::random(&w, &mut rng, 9);
            let lhs = switch_iso(&h_mul(&u, &v, &w).unwrap(), &w).unwrap();
            let rhs = h_mul(
                &switch_iso(&u, &w).unwrap(),
                &switch_iso(&v, &w).unwrap(),
                &back,
            )
            .unwrap();
            if lhs != rhs {
                return Err(format!("switch homomorphism broke over {ring} at {u}, {v}"));
            }
            if switch_iso(&switch_iso(&u, &w).unwrap(), &back).unwrap() != u {
                return Err(format!("switch involution broke over {ring} at {u}"));
            }
        }
    }
    Ok("switch is an involutive homomorphism on 100 samples per ring".into())
}

fn criterion_5() -> Result<String, String> {
    let config = SearchConfig::new(vec![2, 3], 2).map_err(|e| e.to_string())?;
    for h in [SubgroupSpec::Center, SubgroupSpec::Derived] {
        let r = merson_exhaustive(3, &h, &config).map_err(|e| e.to_string())?;
        if !r.is_holds() {
            return Err(format!("exhaustive sweep found a violating pair for {h}: {:?}", r.witnesses));
        }
    }
    Ok("no strictly coarser pair satisfies both hypotheses for center or derived".into())
}

fn criterion_6() -> Result<String, String> {
    for n in [3usize, 4] {
        for cap in [1u32, 2] {
            let config = SearchConfig::new(vec![2, 3], cap).map_err(|e| e.to_string())?;
            let r = decide_key(&SubgroupSpec::Center, &GradedAdicTopology::discrete(n), &config)
                .map_err(|e| e.to_string())?;
            if !r.is_holds() {
                return Err(format!("key verdict failed for n={n}, cap={cap}: {:?}", r.witnesses));
            }
        }
    }
    Ok("center is key for the discrete topology over every tested box".into())
}

fn criterion_7() -> Result<String, String> {
    for p in [2u64, 3] {
        let config = SearchConfig::new(vec![p], 1).map_err(|e| e.to_string())?;
        let gamma = GradedAdicTopology::discrete(3);
        let r = decide_cominimal(&SubgroupSpec::Center, &gamma, &config).map_err(|e| e.to_string())?;
        if r.verdict != Verdict::Fails {
            return Err(format!("expected a failing verdict for p={p}"));
        }
        let expected = format!("gt(n=3; {p}^inf, {p}^inf)");
        if !r.witnesses.contains(&expected) {
            return Err(format!("missing witness {expected}; got {:?}", r.witnesses));
        }
        // re-verify the witness: Hausdorff, coarser, quotient-distinct
        let w: GradedAdicTopology = expected.parse().map_err(|e: crate::Error| e.to_string())?;
        if !w.is_hausdorff()
            || !w.is_coarser(&gamma).unwrap_or(false)
            || w.quotient(&SubgroupSpec::Center).unwrap()
                == gamma.quotient(&SubgroupSpec::Center).unwrap()
        {
            return Err(format!("witness {expected} failed re-verification"));
        }
    }
    Ok("center is not co-minimal: p-adic witnesses re-verified for p = 2, 3".into())
}

fn criterion_8() -> Result<String, String> {
    let m = BiadditiveMap::multiplication(RingSpec::Integers);
    let discrete_triple = TopologyTriple::discrete(1, 1);
    for p in [2u64, 3] {
        let config = SearchConfig::new(vec![p], 1).map_err(|e| e.to_string())?;
        let r = is_minimal_map(&m, &discrete_triple, &config).map_err(|e| e.to_string())?;
        if !r.is_holds() {
            return Err(format!("minimality failed for p={p}: {:?}", r.witnesses));
        }
        let r = is_strongly_minimal_map(&m, &discrete_triple, &config).map_err(|e| e.to_string())?;
        let expected = format!("triple(sigma={p}^inf; tau={p}^inf; nu={p}^inf)");
        if r.verdict != Verdict::Fails || !r.witnesses.contains(&expected) {
            return Err(format!(
                "strong minimality should fail with witness {expected}; got {:?}",
                r.witnesses
            ));
        }
        let gamma = GradedAdicTopology::discrete(3);
        let witness = format!("gt(n=3; {p}^inf, {p}^inf)");
        for h in [SubgroupSpec::OneParam(1, 2), SubgroupSpec::OneParam(2, 3)] {
            let cokey = decide_cokey(&h, &gamma, &config).map_err(|e| e.to_string())?;
            if !cokey.is_holds() {
                return Err(format!("cokey({h}) should hold for p={p}: {:?}", cokey.witnesses));
            }
            let relmin = decide_relatively_minimal(&h, &gamma, &config).map_err(|e| e.to_string())?;
            if relmin.verdict != Verdict::Fails || !relmin.witnesses.contains(&witness) {
                return Err(format!(
                    "relative minimality of {h} should fail with witness {witness} for p={p}"
                ));
            }
        }
    }
    Ok("co-key holds while relative minimality fails, matching the map verdicts".into())
}

fn criterion_9() -> Result<String, String> {
    let config = SearchConfig::new(vec![2, 3], 2).map_err(|e| e.to_string())?;
    let mut pairs = 0u64;
    for gamma in enumerate_family(3, &config) {
        let corner = gamma.level(2).clone();
        for sigma in enumerate_moduli(&config.primes, config.exp_cap, true) {
            if !sigma.divides(&corner) {
                continue;
            }
            let ext = gamma.extension(&sigma).map_err(|e| e.to_string())?;
            if ext.restrict(&SubgroupSpec::Center).unwrap() != InducedTopology::Line(sigma.clone())
            {
                return Err(format!("restriction broke for gamma={gamma}, sigma={sigma}"));
            }
            if ext.quotient(&SubgroupSpec::Center).unwrap()
                != gamma.quotient(&SubgroupSpec::Center).unwrap()
            {
                return Err(format!("quotient broke for gamma={gamma}, sigma={sigma}"));
            }
            certify_extension(&gamma, &sigma, &config)
                .map_err(|e| format!("oracle disagreed for gamma={gamma}, sigma={sigma}: {e}"))?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} extension pairs certified against the saturation oracle at L = {}",
        config.truncation
    ))
}

fn criterion_10() -> Result<String, String> {
    let config = SearchConfig::new(vec![2], 2).map_err(|e| e.to_string())?;
    let gammas: Vec<GradedAdicTopology> = enumerate_family(3, &config)
        .into_iter()
        .filter(|t| t.is_hausdorff())
        .collect();
    for gamma in &gammas {
        let inj = decide_injkey(&SubgroupSpec::Center, gamma, &config).map_err(|e| e.to_string())?;
        let com = decide_cominimal(&SubgroupSpec::Center, gamma, &config).map_err(|e| e.to_string())?;
        if inj.verdict != com.verdict {
            return Err(format!(
                "inj-key ({}) and co-minimal ({}) disagree at gamma = {gamma}",
                inj.verdict, com.verdict
            ));
        }
        if com.is_holds() {
            let key = decide_key(&SubgroupSpec::Center, gamma, &config).map_err(|e| e.to_string())?;
            if !key.is_holds() {
                return Err(format!("co-minimal holds but key fails at gamma = {gamma}"));
            }
        }
    }
    Ok(format!(
        "inj-key and co-minimal verdicts coincide on all {} enumerated topologies",
        gammas.len()
    ))
}

fn criterion_11() -> Result<String, String> {
    let config = SearchConfig::new(vec![2, 3], 1).map_err(|e| e.to_string())?;
    let (table, report) =
        restriction_map_table(&SubgroupSpec::Center, &GradedAdicTopology::discrete(3), &config)
            .map_err(|e| e.to_string())?;
    if !table.morphism_ok || !report.is_holds() {
        return Err("sup-morphism law failed on the enumerated table".into());
    }
    Ok(format!(
        "sup commutes with restriction on all pairs of the {}-row table",
        table.rows.len()
    ))
}

fn criterion_12() -> Result<String, String> {
    let config = SearchConfig::new(vec![2], 1).map_err(|e| e.to_string())?;
    let moduli = enumerate_moduli(&config.primes, config.exp_cap, true);
    let mut accepted = 0u64;
    let mut rejected = 0u64;
    for n1 in &moduli {
        for n2 in &moduli {
            let t = GradedAdicTopology::new(3, vec![n1.clone(), n2.clone()]).unwrap();
            let report = validate(&t, &config);
            match report.verdict {
                Verdict::Holds => accepted += 1,
                Verdict::Fails => {
                    if report.witnesses.is_empty() {
                        return Err(format!("rejection of {t} carries no counterexample"));
                    }
                    if t.is_symbolically_valid() {
                        return Err(format!("oracle rejected the axiomatically valid {t}"));
                    }
                    rejected += 1;
                }
                Verdict::Vacuous => return Err("unexpected vacuous validation".into()),
            }
        }
    }
    // the canonical rejected instance must carry the corner counterexample
    let t: GradedAdicTopology = "gt(n=3; 2^inf, Omega)".parse().unwrap();
    let report = validate(&t, &config);
    let corner = "ut(3; 1,2=2; 1,3=4; 2,3=2)";
    if report.verdict != Verdict::Fails || !report.witnesses.iter().any(|w| w == corner) {
        return Err(format!(
            "expected the corner witness {corner} for {t}; got {:?}",
            report.witnesses
        ));
    }
    Ok(format!(
        "{accepted} accepted topologies passed {} closure trials each; {rejected} rejections \
         carry explicit counterexamples",
        config.trials
    ))
}

pub fn run_battery() -> Vec<CriterionResult> {
    vec![
        run(1, "commutator identity suite", criterion_1),
        run(2, "degree-3 isomorphism", criterion_2),
        run(3, "finite center computation", criterion_3),
        run(4, "switch isomorphism", criterion_4),
        run(5, "agreement forces equality (exhaustive)", criterion_5),
        run(6, "center is key for the discrete topology", criterion_6),
        run(7, "center is not co-minimal over the integers", criterion_7),
        run(8, "multiplication map minimality trade-offs", criterion_8),
        run(9, "extension closed form vs saturation oracle", criterion_9),
        run(10, "inj-key equals co-minimal for the center", criterion_10),
        run(11, "restriction is a sup-semilattice morphism", criterion_11),
        run(12, "axiom/oracle consistency with counterexamples", criterion_12),
    ]
}
