//! Acceptance suite. Each criterion runs at its stated size and time limit
//! and prints one PASS or FAIL line; the process fails if any criterion does.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{One, Signed};
use rand::Rng;
use upcluster_cli::commands;
use upcluster_cli::schema::{parse_field, SeedJson};
use upcluster_core::factor::oracle::{brute_force_factor_count, OracleBounds};
use upcluster_core::factor::{count_irreducible_factors, to_monomial_binomial};
use upcluster_core::matrix::{integer_rank, skew_symmetrizer};
use upcluster_core::membership::{
    is_member_star, local_factorization, local_factorization_in_order, valuation_pairing_fast,
    valuation_pairing_iterative,
};
use upcluster_core::seed::{explore, verify_laurent_phenomenon, ExploreLimits};
use upcluster_core::{CoefficientSpec, ExchangeMatrix, ExponentVector, LaurentPoly, Seed};
use upcluster_testkit::{
    examples, int, random_full_rank_matrix, random_matrix, random_seed, random_term, random_upper_element, rng, seed_of, MatrixShape,
};

type Check = Result<String, String>;

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn seed_doc(matrix: ExchangeMatrix) -> SeedJson {
    SeedJson::from_seed(&matrix, &seed_of(matrix.clone()))
}

fn class_group_table() -> Check {
    let seed = seed_doc(examples::first()).to_seed().map_err(|e| e.to_string())?;
    let mut ranks = Vec::new();
    for (field, want) in [("Q(zeta,12)", 4), ("Q(zeta,4)", 3), ("Q(zeta,6)", 2), ("Q", 1)] {
        let k = parse_field(field).map_err(|e| e.to_string())?;
        let report = commands::class_group_report(&seed, &k, false).map_err(|e| e.to_string())?;
        ensure(report.rank == want, || format!("rank {} over {field}, expected {want}", report.rank))?;
        ranks.push(report.rank.to_string());
    }
    Ok(format!("ranks {}", ranks.join(", ")))
}

fn ufd_verdicts() -> Check {
    let presets = ["Z", "Q", "Q(zeta,4)", "Q(zeta,6)", "Q(zeta,12)"];
    let second = seed_of(examples::second());
    for field in presets {
        let k = parse_field(field).map_err(|e| e.to_string())?;
        let verdict = commands::ufd_report(&second, &k, false).map_err(|e| e.to_string())?;
        ensure(verdict.ufd, || format!("second example not factorial over {field}: {}", verdict.reason))?;
    }
    let third = seed_of(examples::third());
    let k4 = parse_field("Q(zeta,4)").map_err(|e| e.to_string())?;
    let report = commands::class_group_report(&third, &k4, false).map_err(|e| e.to_string())?;
    ensure(report.rank == 3, || format!("third example has rank {} over Q(zeta,4)", report.rank))?;
    let verdict = commands::ufd_report(&third, &CoefficientSpec::rationals(), false).map_err(|e| e.to_string())?;
    ensure(verdict.ufd, || format!("third example over Q: {}", verdict.reason))?;
    Ok("second factorial over all presets; third has rank 3 over Q(zeta,4) and is factorial over Q".into())
}

fn symmetrizer() -> Check {
    let d = examples::first().symmetrizer().to_vec();
    ensure(d == [2, 1, 1, 2], || format!("d = {d:?}"))?;
    Ok(format!("d = {d:?}"))
}

fn membership_pair() -> Check {
    let markov = seed_of(examples::markov());
    let m = commands::member(&markov, "(x1^2+x2^2+x3^2)/(x1*x2*x3)", None).map_err(|e| e.to_string())?;
    ensure(m.member && m.starfish_basis == "upper-bound-only", || format!("Markov element: {m:?}"))?;
    let a3 = seed_of(examples::a3());
    let s = commands::member(&a3, "(1+x2)/(x1*x3)", Some(&[3, 1])).map_err(|e| e.to_string())?;
    ensure(s.member, || format!("A3 element fails the star test: {s:?}"))?;
    ensure(s.laurent_in_seed == Some(false), || format!("A3 element Laurent along [3,1]: {s:?}"))?;
    Ok("Markov element in the star intersection (upper bound only); A3 element not Laurent along [3,1]".into())
}

/// `d_i b_ij = -d_j b_ji` on the principal part.
fn symmetrized_by(matrix: &ExchangeMatrix, d: &[u64]) -> bool {
    let n = matrix.n();
    (0..n).all(|i| {
        (0..n).all(|j| d[i] as i64 * matrix.entry(i, j) == -(d[j] as i64) * matrix.entry(j, i))
    })
}

fn mutation_properties() -> Check {
    let mut r = rng(1001);
    let shape = MatrixShape::default();
    for case in 0..500 {
        let seed = random_seed(&mut r, shape, 1);
        let b = seed.matrix();
        let i = r.gen_range(0..seed.n());
        let mutated = seed.mutate(i).map_err(|e| format!("case {case}: {e}"))?;
        let back = mutated.mutate(i).map_err(|e| format!("case {case}: {e}"))?;
        let mb = mutated.matrix();
        ensure(&mb.mutate(i).map_err(|e| e.to_string())? == b, || format!("case {case}: matrix involution"))?;
        ensure(back.same_seed(&seed), || format!("case {case}: seed involution"))?;
        ensure(integer_rank(mb.rows()) == integer_rank(b.rows()), || format!("case {case}: rank changed"))?;
        let d = skew_symmetrizer(mb.rows(), mb.n(), mb.m()).map_err(|e| format!("case {case}: {e}"))?;
        ensure(symmetrized_by(mb, b.symmetrizer()), || format!("case {case}: d not preserved"))?;
        ensure(d == b.symmetrizer(), || format!("case {case}: normalized d changed"))?;
    }
    Ok("500 seeds".into())
}

fn all_integral(variables: &[LaurentPoly]) -> bool {
    variables.iter().all(|v| v.has_integer_coefficients())
}

fn laurent_phenomenon() -> Check {
    let a2 = seed_of(examples::a2());
    let class = explore(&a2, ExploreLimits::default()).map_err(|e| e.to_string())?;
    ensure(class.finite && class.seeds_found == 5 && class.cluster_variables.len() == 5, || {
        format!("A2: {} seeds, {} variables", class.seeds_found, class.cluster_variables.len())
    })?;
    let a2_check = verify_laurent_phenomenon(&a2, 8).map_err(|e| e.to_string())?;
    ensure(a2_check.closed && a2_check.variables.len() == 5 && all_integral(&a2_check.variables), || {
        "A2 closure".into()
    })?;

    let a3 = seed_of(examples::a3());
    let a3_check = verify_laurent_phenomenon(&a3, 12).map_err(|e| e.to_string())?;
    ensure(a3_check.closed && a3_check.variables.len() == 9 && all_integral(&a3_check.variables), || {
        format!("A3 closure: closed {}, {} variables", a3_check.closed, a3_check.variables.len())
    })?;

    let markov = seed_of(examples::markov());
    let markov_check = verify_laurent_phenomenon(&markov, 4).map_err(|e| e.to_string())?;
    ensure(all_integral(&markov_check.variables), || "Markov variable with a fractional coefficient".into())?;
    Ok(format!(
        "A2 5 seeds/5 variables; A3 {} variables; Markov depth 4 {} variables",
        a3_check.variables.len(),
        markov_check.variables.len()
    ))
}

fn named_polynomials() -> Vec<(Seed, usize, &'static str)> {
    let first = seed_of(examples::first());
    let second = seed_of(examples::second());
    let third = seed_of(examples::third());
    vec![
        (first.clone(), 0, "x2^2 + x4^4"),
        (first.clone(), 1, "x1*x3^3*x4^3 + 1"),
        (first.clone(), 2, "x2^3 + 1"),
        (first, 3, "x1^4*x2^6 + 1"),
        (second.clone(), 0, "x3 + x4"),
        (second.clone(), 1, "x3*x4 + 1"),
        (second.clone(), 2, "x2*x4 + x1"),
        (second, 3, "x1*x2 + x3"),
        (third.clone(), 0, "x2^2 + x3^2*x4^2"),
        (third.clone(), 1, "x1^2 + x3^2"),
        (third, 2, "x1^2 + x2^2"),
    ]
}

fn oracle_agreement() -> Check {
    let q = CoefficientSpec::rationals();
    let names: Vec<String> = (1..=4).map(|k| format!("x{k}")).collect();
    let wide = OracleBounds {
        max_total_degree: 10,
        ..OracleBounds::default()
    };
    for (seed, i, text) in named_polynomials() {
        let f = seed.exchange_polynomial(i).map_err(|e| e.to_string())?;
        let want = upcluster_cli::parser::parse_element(text, &names[..seed.nvars()]).map_err(|e| e.to_string())?;
        ensure(f == want, || format!("f{} = {f}, expected {text}", i + 1))?;
        let oracle = brute_force_factor_count(&f, &wide).map_err(|e| format!("{f}: {e}"))? as u64;
        let count = count_irreducible_factors(&seed, i, &q).map_err(|e| e.to_string())?;
        ensure(oracle == count, || format!("{f}: oracle {oracle}, cyclotomic {count}"))?;
    }

    let shape = MatrixShape { max_n: 3, max_m: 1, max_entry: 4, max_d: 4 };
    // Entries up to 4 in at most three rows keep every total degree within 12.
    let bounds = OracleBounds {
        max_total_degree: 12,
        ..OracleBounds::default()
    };
    let mut r = rng(1007);
    let (mut checked, mut largest_d) = (0, 0);
    for _ in 0..100 {
        let seed = seed_of(random_matrix(&mut r, shape));
        for i in 0..seed.n() {
            if seed.matrix().is_isolated(i) {
                continue;
            }
            let f = seed.exchange_polynomial(i).map_err(|e| e.to_string())?;
            let d = to_monomial_binomial(&f).map_err(|e| e.to_string())?.d;
            if d > 4 {
                continue;
            }
            let oracle = brute_force_factor_count(&f, &bounds).map_err(|e| format!("{f}: {e}"))?;
            let count = count_irreducible_factors(&seed, i, &q).map_err(|e| e.to_string())?;
            ensure(oracle as u64 == count, || format!("{f}: oracle {oracle}, cyclotomic {count}"))?;
            checked += 1;
            largest_d = largest_d.max(d);
        }
    }
    ensure(checked > 0, || "no random polynomial within oracle bounds".into())?;
    Ok(format!("11 named + {checked} random polynomials agree (d up to {largest_d})"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

fn pairing_consistency() -> Check {
    let shape = MatrixShape { max_n: 3, max_m: 2, max_entry: 2, max_d: 2 };
    let mut r = rng(1008);
    for case in 0..100 {
        let seed = seed_of(random_full_rank_matrix(&mut r, shape));
        let u = random_upper_element(&mut r, &seed);
        for i in 0..seed.n() {
            let fast = valuation_pairing_fast(&u, &seed, i).map_err(|e| format!("case {case}: {e}"))?;
            let slow = valuation_pairing_iterative(&u, &seed, i).map_err(|e| format!("case {case}: {e}"))?;
            ensure(fast == slow, || format!("case {case}: (x{} | {u}) fast {fast}, iterative {slow}", i + 1))?;
        }
        let lf = local_factorization(&u, &seed).map_err(|e| format!("case {case}: {e}"))?;
        ensure(lf.cofactor.shift(&lf.monomial(seed.nvars())) == u, || format!("case {case}: reconstruction"))?;
        for i in 0..seed.n() {
            let p = valuation_pairing_iterative(&lf.cofactor, &seed, i).map_err(|e| e.to_string())?;
            ensure(p == 0, || format!("case {case}: cofactor pairing {p} at x{}", i + 1))?;
        }
        for order in permutations(seed.n()) {
            let other = local_factorization_in_order(&u, &seed, &order).map_err(|e| e.to_string())?;
            ensure(other == lf, || format!("case {case}: order {order:?} differs"))?;
        }
    }
    Ok("100 pairs".into())
}

/// Units are the nonzero scalars of the base times frozen monomials.
fn unit_by_characterization(u: &LaurentPoly, n: usize, base: &CoefficientSpec) -> bool {
    let Some((e, c)) = u.leading_term() else {
        return false;
    };
    let scalar_unit = match base {
        CoefficientSpec::Integers => c.is_integer() && c.abs().is_one(),
        _ => true,
    };
    u.len() == 1 && e.iter().take(n).all(|&a| a == 0) && scalar_unit
}

fn units_and_monomials() -> Check {
    let shape = MatrixShape { max_n: 3, max_m: 2, max_entry: 2, max_d: 2 };
    let mut r = rng(1009);
    let fields = [CoefficientSpec::Integers, CoefficientSpec::rationals(), CoefficientSpec::Cyclotomic(4)];
    let mut units = 0;
    for case in 0..200 {
        let seed = seed_of(random_full_rank_matrix(&mut r, shape));
        let mut u = random_term(&mut r, seed.nvars(), 2, &[1, -1, 2, -3]);
        if r.gen_bool(0.5) {
            let frozen: Vec<i64> = (0..seed.nvars()).map(|k| if k < seed.n() { 0 } else { 1 }).collect();
            let (e, c) = u.leading_term().map(|(e, c)| (e.clone(), c.clone())).expect("nonzero");
            let e: Vec<i64> = e.iter().zip(&frozen).map(|(a, f)| a * f).collect();
            u = LaurentPoly::monomial(ExponentVector::new(e), c);
        }
        for k in &fields {
            let got = u.is_unit(seed.n(), k);
            ensure(got == unit_by_characterization(&u, seed.n(), k), || format!("case {case}: is_unit({u}) over {k}"))?;
            units += got as usize;
        }
        let (e, c) = u.leading_term().map(|(e, c)| (e.clone(), c.clone())).expect("nonzero");
        let inverse = LaurentPoly::monomial(e.scale(-1), c.recip());
        let in_u = |x: &LaurentPoly| is_member_star(x, &seed).map(|m| m.in_upper()).map_err(|e| e.to_string());
        let invertible_in_u = in_u(&u)? && in_u(&inverse)?;
        ensure(invertible_in_u == u.is_unit(seed.n(), &CoefficientSpec::rationals()), || {
            format!("case {case}: {u} invertible in U over Q is {invertible_in_u}")
        })?;
    }
    for case in 0..200 {
        let seed = seed_of(random_full_rank_matrix(&mut r, shape));
        let mut e: Vec<i64> = (0..seed.nvars()).map(|_| r.gen_range(-3..=3)).collect();
        e[r.gen_range(0..seed.n())] = -r.gen_range(1..=3);
        let u = LaurentPoly::monomial(ExponentVector::new(e), int(1));
        let member = is_member_star(&u, &seed).map_err(|e| e.to_string())?.member;
        ensure(!member, || format!("case {case}: {u} accepted"))?;
    }
    Ok(format!("200 terms over 3 rings ({units} unit verdicts); 200 monomials rejected"))
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion { name: "class-group table", limit: Some(Duration::from_secs(1)), run: class_group_table },
        Criterion { name: "UFD verdicts", limit: Some(Duration::from_secs(1)), run: ufd_verdicts },
        Criterion { name: "symmetrizer", limit: None, run: symmetrizer },
        Criterion { name: "membership pair", limit: Some(Duration::from_secs(1)), run: membership_pair },
        Criterion { name: "mutation property suite", limit: Some(Duration::from_secs(30)), run: mutation_properties },
        Criterion { name: "Laurent phenomenon", limit: Some(Duration::from_secs(60)), run: laurent_phenomenon },
        Criterion { name: "factor-count oracle agreement", limit: Some(Duration::from_secs(120)), run: oracle_agreement },
        Criterion { name: "pairing consistency", limit: Some(Duration::from_secs(120)), run: pairing_consistency },
        Criterion { name: "units and monomial lemma", limit: None, run: units_and_monomials },
    ];
    let mut failures = 0;
    for criterion in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(criterion.run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, criterion.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (outcome, _) => outcome,
        };
        match outcome {
            Ok(detail) => println!("PASS  {}: {detail} [{elapsed:.2?}]", criterion.name),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {}: {detail} [{elapsed:.2?}]", criterion.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
