use num_rational::BigRational;
use serde_json::{json, Value};

use super::{
    AlgebraKind, AnnihilatorArgs, BettiCmd, CheckCmd, CliError, ColonArgs, Command, EsymCmd, FormulaKind, HilbertCmd,
    LefschetzArgs, MethodArg, ModeArg, Rendered, SequenceArgs, Target,
};
use crate::apolarity::{annihilator, lefschetz_check, DualForm, LefschetzMode, LefschetzReport};
use crate::exactalg::{Field, FieldSpec, PARANOID_PRIME};
use crate::formulas::{
    betti_aci_odd, betti_gorenstein_odd, betti_sum_formula, reduced_sequence, BettiTable, QuotientKind,
};
use crate::hilbert::{ci_hilbert, froberg_series, gorenstein_linked_hilbert, DegreeSequence, HilbertSeries};
use crate::polyring::{parse_polynomial, parse_polynomial_list, Polynomial};
use crate::resolver::{
    aci_algebra, betti_by_iterated_syzygies, betti_by_koszul_homology, ci_algebra, colon_ideal, ideal_slices,
    linked_algebra, minimal_betti_oracle, minimal_generators, quotient_hilbert, sequence_generators, GradedAlgebra,
    GradedIdealSlices,
};
use crate::special::{
    build_lifted_family, check_colon_equals_plus, check_esym_generators, check_lift_of_colon, check_syzygies_up_to,
    check_xn_regular, enumerate_point_set, esym_annihilator_generators, random_generic_level_spotcheck,
    sqfree_leading_set, SquareSetup, DEFAULT_RETRIES,
};
use crate::with_field;

type CliResult<T> = Result<T, CliError>;

pub(super) fn dispatch(cmd: &Command, field: FieldSpec) -> CliResult<Rendered> {
    match cmd {
        Command::Hilbert(h) => hilbert(h, field),
        Command::Betti(BettiCmd::Formula {
            kind,
            seq,
            target,
            verify,
            method,
        }) => with_field!(field, f => formula(&f, *kind, seq, *target, *verify, *method)),
        Command::Betti(BettiCmd::Oracle {
            degrees,
            ell_power,
            target,
            nvars,
            gens,
            method,
        }) => {
            with_field!(field, f => oracle(&f, degrees.as_deref(), *ell_power, *target, *nvars, gens.as_deref(), *method))
        }
        Command::Colon(a) => with_field!(field, f => colon(&f, a)),
        Command::Annihilator(a) => with_field!(field, f => annihilator_cmd(&f, a)),
        Command::Esym(e) => esym(e, field),
        Command::Lefschetz(a) => with_field!(field, f => lefschetz(&f, a)),
        Command::Check(c) => check(c, field),
    }
}

fn sequence(seq: &SequenceArgs) -> CliResult<DegreeSequence> {
    Ok(DegreeSequence::with_ell(seq.degrees.clone(), seq.ell_power)?)
}

fn quotient_kind(t: Target) -> QuotientKind {
    match t {
        Target::Aci => QuotientKind::Aci,
        Target::Gorenstein => QuotientKind::Gorenstein,
    }
}

fn table_json(table: &BettiTable) -> Value {
    serde_json::to_value(table.to_json_value()).expect("betti json")
}

fn table_rendered(table: &BettiTable, notes: &[String], extra: Vec<(&str, Value)>) -> Rendered {
    let mut text = String::new();
    for n in notes {
        text.push_str(n);
        text.push('\n');
    }
    text.push_str(&table.render_text());
    let mut json = table_json(table);
    if let Value::Object(map) = &mut json {
        for (k, v) in extra {
            map.insert(k.to_string(), v);
        }
    }
    Rendered {
        text,
        json,
        csv: Some(table.to_csv()),
    }
}

fn series_rendered(label: &str, s: &HilbertSeries) -> Rendered {
    let mut csv = String::from("j,value\n");
    for (j, v) in s.coeffs().iter().enumerate() {
        csv.push_str(&format!("{j},{v}\n"));
    }
    Rendered {
        text: format!("{label}: {s}\n"),
        json: json!({ "kind": label, "hilbert": s.coeffs(), "socle_degree": s.socle_degree() }),
        csv: Some(csv),
    }
}

fn poly_strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn hilbert(cmd: &HilbertCmd, field: FieldSpec) -> CliResult<Rendered> {
    match cmd {
        HilbertCmd::Ci { degrees } => {
            let ds = DegreeSequence::ci(degrees.clone())?;
            Ok(series_rendered("ci", &ci_hilbert(&ds)))
        }
        HilbertCmd::Froberg { nvars, degrees } => {
            Ok(series_rendered("froberg", &froberg_series(*nvars, degrees)?.series))
        }
        HilbertCmd::Linked(seq) => Ok(series_rendered("linked", &gorenstein_linked_hilbert(&sequence(seq)?)?)),
        HilbertCmd::Quotient(ideal) => {
            let gens = parse_polynomial_list(&ideal.gens, ideal.nvars)?;
            let s = with_field!(field, f => quotient_hilbert(&f, ideal.nvars, &gens))?;
            Ok(series_rendered("quotient", &s))
        }
    }
}

/// Oracle table of the quotient attached to a degree sequence.
fn sequence_oracle<F: Field>(
    field: &F,
    ds: &DegreeSequence,
    target: Target,
    method: MethodArg,
) -> CliResult<BettiTable> {
    let table = match (target, method) {
        (Target::Aci, MethodArg::Koszul) => betti_by_koszul_homology(&aci_algebra(field, ds)?)?,
        (Target::Gorenstein, MethodArg::Koszul) => betti_by_koszul_homology(&linked_algebra(field, ds)?)?,
        (Target::Aci, MethodArg::Syzygies) => {
            betti_by_iterated_syzygies(&ideal_slices(field, ds.n(), &sequence_generators(ds))?)?
        }
        (Target::Gorenstein, MethodArg::Syzygies) => {
            let n = ds.n();
            let ci: Vec<Polynomial> = ds
                .degrees()
                .iter()
                .enumerate()
                .map(|(i, &d)| Polynomial::var_power(n, i, d))
                .collect();
            let ell = Polynomial::ell(n).pow(ds.require_ell()?);
            betti_by_iterated_syzygies(&colon_ideal(field, n, &ci, &ell)?)?
        }
    };
    Ok(table)
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Koszul => "koszul",
        MethodArg::Syzygies => "syzygies",
    }
}

fn formula<F: Field>(
    field: &F,
    kind: FormulaKind,
    seq: &SequenceArgs,
    target: Target,
    verify: bool,
    method: MethodArg,
) -> CliResult<Rendered> {
    let ds = sequence(seq)?;
    let mut notes = Vec::new();
    let mut extra = Vec::new();
    let (table, target) = match kind {
        FormulaKind::Aci => (betti_aci_odd(&ds)?, Target::Aci),
        FormulaKind::Gorenstein => (betti_gorenstein_odd(&ds)?, Target::Gorenstein),
        FormulaKind::Sum => {
            let (q, _) = reduced_sequence(&ds)?;
            notes.push(format!("square at x{}", q + 1));
            extra.push(("square_position", json!(q + 1)));
            extra.push(("target", json!(quotient_kind(target).to_string())));
            (betti_sum_formula(&ds, quotient_kind(target))?, target)
        }
    };
    if verify {
        let oracle = sequence_oracle(field, &ds, target, method)?;
        if let Some(((i, j), a, b)) = table.first_difference(&oracle) {
            return Err(CliError::Verification(format!(
                "first difference at (i,j) = ({i},{j}): formula {a}, oracle {b}"
            )));
        }
        notes.push(format!(
            "verified against the {} oracle over {}",
            method_name(method),
            field.spec()
        ));
        extra.push(("verified", json!(true)));
    }
    Ok(table_rendered(&table, &notes, extra))
}

fn oracle<F: Field>(
    field: &F,
    degrees: Option<&[u32]>,
    ell_power: Option<u32>,
    target: Target,
    nvars: Option<usize>,
    gens: Option<&str>,
    method: MethodArg,
) -> CliResult<Rendered> {
    let table = match (degrees, nvars, gens) {
        (Some(d), None, None) => {
            let ds = DegreeSequence::new(d.to_vec(), ell_power)?;
            match (target, ds.ell_power()) {
                (Target::Aci, _) => minimal_betti_oracle(field, ds.n(), &sequence_generators(&ds), method.into())?,
                (Target::Gorenstein, Some(_)) => sequence_oracle(field, &ds, target, method)?,
                (Target::Gorenstein, None) => {
                    return Err(CliError::Usage("the Gorenstein target needs --ell-power".into()))
                }
            }
        }
        (None, Some(n), Some(g)) => {
            let gens = parse_polynomial_list(g, n)?;
            minimal_betti_oracle(field, n, &gens, method.into())?
        }
        _ => {
            return Err(CliError::Usage(
                "give either --degrees [--ell-power] or --nvars with --gens".into(),
            ))
        }
    };
    let note = format!("oracle: {} over {}", method_name(method), field.spec());
    Ok(table_rendered(
        &table,
        &[note],
        vec![("method", json!(method_name(method)))],
    ))
}

fn slices_rendered<F: Field>(label: &str, slices: &GradedIdealSlices<F>) -> Rendered {
    let hf = HilbertSeries::new(slices.quotient_dims());
    let gens: Vec<(usize, Polynomial)> = minimal_generators(slices);
    let mut text = format!("{label} hilbert: {hf}\nminimal generators:\n");
    for (_, g) in &gens {
        text.push_str(&format!("  {g}\n"));
    }
    let mut csv = String::from("degree,generator\n");
    for (d, g) in &gens {
        csv.push_str(&format!("{d},{g}\n"));
    }
    Rendered {
        text,
        json: json!({
            "hilbert": hf.coeffs(),
            "socle_degree": hf.socle_degree(),
            "generators": gens.iter().map(|(d, g)| json!({"degree": d, "form": g.to_string()})).collect::<Vec<_>>(),
        }),
        csv: Some(csv),
    }
}

fn colon<F: Field>(field: &F, a: &ColonArgs) -> CliResult<Rendered> {
    let n = a.ideal.nvars;
    let gens = parse_polynomial_list(&a.ideal.gens, n)?;
    let by = parse_polynomial(&a.by, n)?;
    let slices = colon_ideal(field, n, &gens, &by)?;
    Ok(slices_rendered("colon", &slices))
}

fn parse_dual(form: &str, n: usize) -> CliResult<DualForm> {
    Ok(DualForm::new(parse_polynomial(&form.replace('X', "x"), n)?)?)
}

fn annihilator_cmd<F: Field>(field: &F, a: &AnnihilatorArgs) -> CliResult<Rendered> {
    let dual = parse_dual(&a.form, a.nvars)?;
    let slices = annihilator(field, &dual)?;
    Ok(slices_rendered("annihilator", &slices))
}

fn esym(cmd: &EsymCmd, field: FieldSpec) -> CliResult<Rendered> {
    match cmd {
        EsymCmd::Gens { nvars, d, verify } => {
            let gens = esym_annihilator_generators(*nvars, *d)?;
            if *verify && !with_field!(field, f => check_esym_generators(&f, *nvars, *d))? {
                return Err(CliError::Verification("generators differ from the colon ideal".into()));
            }
            let strs = poly_strings(&gens);
            let mut text: String = strs.iter().map(|s| format!("{s}\n")).collect();
            if *verify {
                text.push_str(&format!("verified against the colon ideal over {field}\n"));
            }
            Ok(Rendered {
                text,
                json: json!({ "n": nvars, "d": d, "generators": strs, "verified": verify }),
                csv: Some(
                    std::iter::once("generator".to_string())
                        .chain(strs)
                        .map(|s| s + "\n")
                        .collect(),
                ),
            })
        }
        EsymCmd::Count { nvars, d } => {
            let set = sqfree_leading_set(*nvars, *d)?;
            let leading: Vec<String> = set.iter().map(|m| m.to_string()).collect();
            Ok(Rendered {
                text: format!("{}\n", set.len()),
                json: json!({ "n": nvars, "d": d, "count": set.len(), "leading": leading }),
                csv: Some(format!("n,d,count\n{nvars},{d},{}\n", set.len())),
            })
        }
    }
}

fn lefschetz_algebra<F: Field>(field: &F, a: &LefschetzArgs) -> CliResult<(GradedAlgebra<F>, String)> {
    match (&a.dual, &a.gens, &a.degrees) {
        (Some(form), None, None) => {
            let n = a.nvars.ok_or_else(|| CliError::Usage("--dual needs --nvars".into()))?;
            let dual = parse_dual(form, n)?;
            let slices = annihilator(field, &dual)?;
            Ok((GradedAlgebra::from_slices(&slices), format!("R/Ann({dual})")))
        }
        (None, Some(g), None) => {
            let n = a.nvars.ok_or_else(|| CliError::Usage("--gens needs --nvars".into()))?;
            let gens = parse_polynomial_list(g, n)?;
            let slices = ideal_slices(field, n, &gens)?;
            Ok((
                GradedAlgebra::from_slices(&slices),
                format!("R/({})", poly_strings(&gens).join(", ")),
            ))
        }
        (None, None, Some(d)) => {
            let ds = DegreeSequence::new(d.clone(), a.ell_power)?;
            match a.kind {
                AlgebraKind::Ci => Ok((ci_algebra(field, ds.degrees()), format!("CI {ds}"))),
                AlgebraKind::Aci => Ok((aci_algebra(field, &ds)?, format!("ACI {ds}"))),
                AlgebraKind::Gorenstein => Ok((linked_algebra(field, &ds)?, format!("linked Gorenstein {ds}"))),
            }
        }
        _ => Err(CliError::Usage(
            "give exactly one of --degrees, --gens or --dual".into(),
        )),
    }
}

fn report_rendered(r: &LefschetzReport) -> Rendered {
    let mut text = format!(
        "algebra: {}\nform: ({})\nfield: {}\nverdict: {}\n",
        r.algebra,
        r.form.join(", "),
        r.field,
        r.verdict
    );
    if let Some(f) = r.first_failure() {
        text.push_str(&format!(
            "first failure: power {} from degree {} has rank {} ({} -> {})\n",
            f.power, f.degree, f.rank, f.source_dim, f.target_dim
        ));
    }
    let mut csv = String::from("degree,power,source_dim,target_dim,rank\n");
    for rec in &r.records {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            rec.degree, rec.power, rec.source_dim, rec.target_dim, rec.rank
        ));
    }
    Rendered {
        text,
        json: serde_json::to_value(r).expect("report json"),
        csv: Some(csv),
    }
}

fn lefschetz<F: Field>(field: &F, a: &LefschetzArgs) -> CliResult<Rendered> {
    let (alg, name) = lefschetz_algebra(field, a)?;
    let coeffs: Option<Vec<BigRational>> = a
        .linear
        .as_ref()
        .map(|c| c.iter().map(|&v| BigRational::from_integer(v.into())).collect());
    let mode = match a.mode {
        ModeArg::Weak => LefschetzMode::Weak,
        ModeArg::Strong => LefschetzMode::Strong,
    };
    let report = lefschetz_check(&alg, coeffs.as_deref(), mode, &name)?;
    Ok(report_rendered(&report))
}

fn flag(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn check(cmd: &CheckCmd, field: FieldSpec) -> CliResult<Rendered> {
    match cmd {
        CheckCmd::Syzygy { seq, max_degree } => {
            let setup = SquareSetup::from_sequence(&sequence(seq)?)?;
            let bound = max_degree.unwrap_or_else(|| {
                2 * seq.degrees.iter().chain([&seq.ell_power]).copied().max().unwrap_or(2) as usize + 2
            });
            let (count, ok) = with_field!(field, f => check_syzygies_up_to(&f, &setup, bound))?;
            if !ok {
                return Err(CliError::Verification(format!(
                    "a syzygy up to degree {bound} fails the weighted sum"
                )));
            }
            Ok(Rendered {
                text: format!("{setup}: {count} syzygies up to degree {bound}: ok\n"),
                json: json!({ "setup": setup.to_string(), "max_degree": bound, "syzygies": count, "ok": ok }),
                csv: Some(format!("max_degree,syzygies,ok\n{bound},{count},{ok}\n")),
            })
        }
        CheckCmd::PointSet(seq) => {
            let setup = SquareSetup::from_sequence(&sequence(seq)?)?;
            let family = with_field!(field, f => build_lifted_family(&f, &setup))?;
            let x = enumerate_point_set(&family)?;
            let fmt_point =
                |p: &Vec<i64>| format!("[{}]", p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" : "));
            let mut text = format!("{setup}: {} points\n", x.len());
            for p in &x.points {
                text.push_str(&fmt_point(p));
                text.push('\n');
            }
            let mut csv = String::new();
            for p in &x.points {
                csv.push_str(&p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
                csv.push('\n');
            }
            Ok(Rendered {
                text,
                json: json!({ "setup": setup.to_string(), "count": x.len(), "points": x.points }),
                csv: Some(csv),
            })
        }
        CheckCmd::Regular(seq) => {
            let setup = SquareSetup::from_sequence(&sequence(seq)?)?;
            let (regular, lift, plus) = with_field!(field, f => {
                let family = build_lifted_family(&f, &setup)?;
                (
                    check_xn_regular(&f, &family)?,
                    check_lift_of_colon(&f, &family)?,
                    check_colon_equals_plus(&f, &setup)?,
                )
            });
            let n = setup.n();
            let text = format!(
                "{setup}\nx{n} regular on the lifted quotient: {}\nlifted colon restricts to the colon: {}\ncolon by x{n} equals sum with x{n}: {}\n",
                flag(regular),
                flag(lift),
                flag(plus)
            );
            if !(regular && lift && plus) {
                return Err(CliError::Verification(text));
            }
            Ok(Rendered {
                text,
                json: json!({ "setup": setup.to_string(), "regular": regular, "lift_of_colon": lift, "colon_equals_plus": plus }),
                csv: Some(format!(
                    "regular,lift_of_colon,colon_equals_plus\n{regular},{lift},{plus}\n"
                )),
            })
        }
        CheckCmd::GenericLevel {
            nvars,
            degrees,
            seed,
            draws,
        } => {
            let mut text = format!("field: prime:{PARANOID_PRIME}\n");
            let mut csv = String::from("seed,attempts,hilbert,socle,level\n");
            let mut rows = Vec::new();
            let mut all = true;
            for k in 0..*draws {
                let s = seed.wrapping_add(k as u64);
                let r = random_generic_level_spotcheck(*nvars, degrees, s, DEFAULT_RETRIES)?;
                let join = |v: Vec<String>| v.join(" ");
                let hf = join(r.hilbert.iter().map(|v| v.to_string()).collect());
                let socle = join(r.socle.iter().map(|v| v.to_string()).collect());
                text.push_str(&format!(
                    "seed {s}: hilbert {hf}, socle {socle}, {}\n",
                    if r.level { "level" } else { "NOT level" }
                ));
                csv.push_str(&format!("{s},{},{hf},{socle},{}\n", r.attempts, r.level));
                all &= r.level;
                rows.push(r);
            }
            if !all {
                return Err(CliError::Verification(text));
            }
            Ok(Rendered {
                text,
                json: json!({ "field": format!("prime:{PARANOID_PRIME}"), "draws": rows }),
                csv: Some(csv),
            })
        }
    }
}
