//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::time::{Duration, Instant};

use braided_fock::braiding::spectral::{baxterize, Flavor as Spectral};
use braided_fock::braiding::Series;
use braided_fock::currents::{CurrentDouble, CurrentRelations};
use braided_fock::fock::{
    braided_lie, make_double, DoubleElement, Family, Flavor, FockDouble, Gen,
};
use braided_fock::quadalgebra::{classical_dims, make_algebra, AlgebraKind};
use braided_fock::report::{CheckRecord, Verdict};
use braided_fock::tensor::{LinOperator, Matrix, Space};
use braided_fock::{Braiding, Error, Scalar};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn gate(records: &[CheckRecord]) -> Result<usize, String> {
    match records.iter().find(|r| r.verdict == Verdict::Fail) {
        Some(r) => Err(format!(
            "{}: {}",
            r.id,
            r.witness.clone().unwrap_or_default()
        )),
        None => Ok(records
            .iter()
            .filter(|r| r.verdict == Verdict::Pass)
            .count()),
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn weyl_defect(d: &FockDouble) -> Result<(), String> {
    let n = d.braiding().dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.normal_order(&[Gen::A(j), Gen::B(i)]);
            let mut rhs = d.normal_order(&[Gen::B(i), Gen::A(j)]);
            if i == j {
                rhs = rhs.add(&DoubleElement::one());
            }
            if lhs != rhs {
                return Err(format!("x^{} x_{}", j + 1, i + 1));
            }
            if d.normal_order(&[Gen::B(i), Gen::B(j)]) != d.normal_order(&[Gen::B(j), Gen::B(i)]) {
                return Err(format!("x_{} x_{}", i + 1, j + 1));
            }
            if d.normal_order(&[Gen::A(i), Gen::A(j)]) != d.normal_order(&[Gen::A(j), Gen::A(i)]) {
                return Err(format!("x^{} x^{}", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

fn classical_anchor() -> Outcome {
    let start = Instant::now();
    for n in [2, 3] {
        let b = Braiding::flip(n);
        let s = b.skew_inverse().map_err(|e| e.to_string())?;
        if s.psi.matrix() != LinOperator::flip(n).matrix() {
            return Err(format!("N={n}: Psi is not the flip"));
        }
        if !s.b.is_identity() || !s.c.is_identity() {
            return Err(format!("N={n}: B or C is not the identity"));
        }
        let d =
            make_double(&b, Flavor::Bosonic, Family::Hecke, false).map_err(|e| e.to_string())?;
        weyl_defect(&d).map_err(|w| format!("N={n}: Weyl relation fails at {w}"))?;
        d.classical_commutator_defect()
            .map_err(|w| format!("N={n}: gl commutator fails at {w}"))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("N=2,3 in {:?}", start.elapsed()))
}

fn hecke_suite() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in [2, 3] {
        let b = Braiding::standard_hecke(n);
        let recs = b.check_suite();
        for want in [
            "braid",
            "minimal-polynomial",
            "strictly-skew-invertible",
            "bc-scalar",
            "left-pairing",
        ] {
            let id = format!("braiding.{}.{want}", b.label());
            if !recs.iter().any(|r| r.id == id) {
                return Err(format!("missing record {id}"));
            }
        }
        count += gate(&recs)?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{count} exact checks in {:?}", start.elapsed()))
}

fn double_cases() -> Vec<(Braiding, Flavor, Family)> {
    vec![
        (Braiding::standard_hecke(2), Flavor::Bosonic, Family::Hecke),
        (
            Braiding::standard_hecke(2),
            Flavor::Fermionic,
            Family::Hecke,
        ),
        (Braiding::standard_hecke(3), Flavor::Bosonic, Family::Hecke),
        (
            Braiding::standard_hecke(3),
            Flavor::Fermionic,
            Family::Hecke,
        ),
        (
            Braiding::bmw_orthogonal_3(),
            Flavor::Bosonic,
            Family::BmwOrthogonal,
        ),
        (
            Braiding::bmw_symplectic_2(),
            Flavor::Fermionic,
            Family::BmwSymplectic,
        ),
    ]
}

fn compatibility() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (b, flavor, family) in double_cases() {
        let d =
            FockDouble::unchecked(&b, flavor, family, false, None).map_err(|e| e.to_string())?;
        let recs = d.verify_compatibility();
        if !recs.iter().any(|r| r.id.ends_with(".diamond-3")) {
            return Err(format!("{}: no diamond test", b.label()));
        }
        count += gate(&recs)?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "{count} checks over 6 doubles in {:?}",
        start.elapsed()
    ))
}

fn hecke_l_relations() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in [2, 3] {
        let b = Braiding::standard_hecke(n);
        for flavor in [Flavor::Bosonic, Flavor::Fermionic] {
            let d = make_double(&b, flavor, Family::Hecke, false).map_err(|e| e.to_string())?;
            count += gate(&d.verify_l_relations())?;
            if flavor == Flavor::Bosonic {
                let reps = d.verify_representations(3);
                if reps.iter().filter(|r| r.verdict == Verdict::Pass).count() != 3 {
                    return Err(format!("N={n}: expected three representation checks"));
                }
                count += gate(&reps)?;
            }
        }
    }
    Ok(format!("{count} checks in {:?}", start.elapsed()))
}

fn bmw_l_relations() -> Outcome {
    let start = Instant::now();
    let cases = [
        (
            Braiding::bmw_orthogonal_3(),
            Flavor::Bosonic,
            Family::BmwOrthogonal,
            Series::Orthogonal,
        ),
        (
            Braiding::bmw_symplectic_2(),
            Flavor::Fermionic,
            Family::BmwSymplectic,
            Series::Symplectic,
        ),
    ];
    for (b, flavor, family, series) in cases {
        if b.mu() != Some(&series.expected_mu(b.dim())) {
            return Err(format!("{}: mu differs from the series value", b.label()));
        }
        let d = make_double(&b, flavor, family, false).map_err(|e| e.to_string())?;
        let p = b.projectors().map_err(|e| e.to_string())?;
        let q = b.q().clone();
        let first = match series {
            Series::Orthogonal => q,
            Series::Symplectic => -q.inv().map_err(|e| e.to_string())?,
        };
        let expected = p
            .get(&first)
            .ok_or("missing projector")?
            .add(p.get(b.mu().unwrap()).ok_or("missing mu projector")?);
        let x = d.l_relation_operator().map_err(|e| e.to_string())?;
        if x != expected {
            return Err(format!(
                "{}: relation operator is not the projector sum",
                b.label()
            ));
        }
        gate(&d.verify_l_relations())?;
    }
    Ok(format!(
        "orthogonal N=3 and symplectic N=2 in {:?}",
        start.elapsed()
    ))
}

fn braided_lie_suite() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let lie = braided_lie(&Braiding::standard_hecke(2)).map_err(|e| e.to_string())?;
    count += gate(&lie.check_suite())?;
    for b in [
        Braiding::flip(2),
        Braiding::flip(3),
        Braiding::superflip(1, 1),
        Braiding::superflip(2, 1),
    ] {
        let lie = braided_lie(&b).map_err(|e| e.to_string())?;
        let recs = lie.check_suite();
        if !recs.iter().any(|r| r.id.ends_with(".jacobi-involutive")) {
            return Err(format!("{}: involutive Jacobi form not run", b.label()));
        }
        count += gate(&recs)?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{count} checks in {:?}", start.elapsed()))
}

fn poincare() -> Outcome {
    let start = Instant::now();
    for n in [2, 3] {
        let b = Braiding::standard_hecke(n);
        for kind in [AlgebraKind::Sym, AlgebraKind::Lambda] {
            for space in [Space::V, Space::Dual] {
                let dims = make_algebra(&b, kind, space)
                    .map_err(|e| e.to_string())?
                    .poincare(5);
                if dims != classical_dims(n, kind, 5) {
                    return Err(format!("N={n} {kind:?} {space:?}: {dims:?}"));
                }
            }
        }
    }
    let mut notes = Vec::new();
    for b in [Braiding::bmw_orthogonal_3(), Braiding::bmw_symplectic_2()] {
        for kind in [AlgebraKind::Sym, AlgebraKind::Lambda] {
            let dims = make_algebra(&b, kind, Space::V)
                .map_err(|e| e.to_string())?
                .poincare(4);
            let classical = classical_dims(b.dim(), kind, 4);
            let tag = if dims == classical {
                "classical"
            } else {
                "non-classical"
            };
            notes.push(format!("{} {kind:?} {dims:?} {tag}", b.label()));
        }
    }
    Ok(format!(
        "Hecke classical to k=5 in {:?}; report-only: {}",
        start.elapsed(),
        notes.join(", ")
    ))
}

fn currents() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (b, flavor) in [
        (Braiding::flip(2), Spectral::Rational),
        (Braiding::standard_hecke(2), Spectral::Trigonometric),
    ] {
        let cb = baxterize(&b, flavor).map_err(|e| e.to_string())?;
        count += gate(&cb.check_suite())?;
        let cd = CurrentDouble::new(&cb, 6, 1).map_err(|e| e.to_string())?;
        count += gate(&cd.current_relation_check(CurrentRelations::BSide))?;
        count += gate(&cd.current_relation_check(CurrentRelations::ASide))?;
        let yang = cd.verify_yang(2, 1).map_err(|e| e.to_string())?;
        for want in ["yang", "yang-cancellation"] {
            if !yang
                .records
                .iter()
                .any(|r| r.id.ends_with(&format!(".{want}")))
            {
                return Err(format!("{}: missing {want}", b.label()));
            }
        }
        count += gate(&yang.records)?;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{count} checks in {:?}", start.elapsed()))
}

fn negative_controls() -> Outcome {
    let mut t = Braiding::bmw_orthogonal_3().to_table();
    t.entries[1].value = Scalar::int(7);
    if Braiding::from_table(&t).is_ok() {
        return Err("corrupted BMW table accepted".into());
    }
    match make_double(
        &Braiding::bmw_symplectic_2(),
        Flavor::Bosonic,
        Family::BmwSymplectic,
        false,
    ) {
        Err(Error::UnsupportedDouble(_)) => {}
        _ => return Err("bosonic symplectic double not rejected".into()),
    }
    let b = Braiding::standard_hecke(2);
    let mut x: Matrix = b
        .extend_to_duals()
        .map_err(|e| e.to_string())?
        .dual_v
        .into_matrix();
    x[(1, 1)] = &x[(1, 1)] + &Scalar::one();
    let d = FockDouble::unchecked(&b, Flavor::Bosonic, Family::Hecke, false, Some(x))
        .map_err(|e| e.to_string())?;
    if d.diamond_defect(3).is_none() {
        return Err("corrupted permutation tensor passes the diamond test".into());
    }
    Ok("all three rejected".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("classical anchor", classical_anchor),
        ("Hecke braiding suite", hecke_suite),
        ("double compatibility", compatibility),
        ("L-relations in Hecke doubles", hecke_l_relations),
        ("L-relations in BMW doubles", bmw_l_relations),
        ("braided Lie algebra", braided_lie_suite),
        ("Poincaré series", poincare),
        ("currents", currents),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
