use std::path::PathBuf;

use belyi_core::beauville::{
    self, genus_triangle, h4_lemma_check, is_mixed, is_unmixed, reality_verdict, search_h4_quadruple,
    search_unmixed, MixedQuadruple, Reality, SearchOptions, SearchOutcome, Structure, TypeTriple,
    UnmixedFailure,
};
use belyi_core::dessins::{dessin_from_pair, export_dot, genus_of_dessin};
use belyi_core::diffpoly::{self, component_orbits, gcd_branches, projection_check, ProductMonodromy, ProductMonodromyJson};
use belyi_core::groups::{AltGroup, FiniteGroup, GroupSpec, H4Group, SymGroup, DEFAULT_BUDGET};
use belyi_core::monodromy::{
    belyi_pair, chebycheff_pair, classes_of, classify as classify_datum, enumerate_factorizations,
    exhaustive_scan, is_real_class, monodromy_group_order, random_valid_pair, BranchDatum, MonodromyPair,
    MonodromyPairJson,
};
use belyi_core::polyexact::{self, chebyshev_pair, critical_values_within, int, rat, RatPoly, RatPolyJson};
use belyi_core::with_group;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::Outcome;

type CmdResult = Result<Outcome, String>;

const GROUP_CAP: usize = 1_000_000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn pair_json(p: &MonodromyPair) -> Value {
    json!(MonodromyPairJson::from(p))
}

fn poly_json(p: &RatPoly) -> Value {
    json!({ "text": p.to_string(), "coeffs": RatPolyJson::from(p).coeffs })
}

fn spec(text: &str) -> Result<GroupSpec, String> {
    text.parse().map_err(err)
}

/// Inline JSON, or the contents of a file.
fn load_json(arg: &str) -> Result<Value, String> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?
    };
    serde_json::from_str(&text).map_err(err)
}

/// A JSON element, or a bare string such as a cycle word.
fn element_value(arg: &str) -> Value {
    serde_json::from_str(arg).unwrap_or_else(|_| Value::String(arg.to_string()))
}

fn group_field(v: &Value) -> Result<GroupSpec, String> {
    let s = v
        .get("group")
        .and_then(Value::as_str)
        .ok_or("structure lacks a `group` string")?;
    spec(s)
}

pub fn enumerate(
    type0: Option<String>,
    type1: Option<String>,
    degree: Option<usize>,
    guard: usize,
    list: bool,
) -> CmdResult {
    if let Some(n) = degree {
        let rows = exhaustive_scan(n, guard).map_err(err)?;
        return Ok(Outcome::ok(json!({ "degree": n, "data": rows })));
    }
    let (Some(t0), Some(t1)) = (type0, type1) else {
        return Err("give --type0 and --type1, or --degree".into());
    };
    let datum = BranchDatum::parse(&t0, &t1).map_err(err)?;
    let e = enumerate_factorizations(&datum, guard).map_err(err)?;
    let classes: Vec<Value> = classes_of(&e.pairs)
        .iter()
        .map(|c| json!({ "representative": pair_json(&c.representative), "orbit_size": c.orbit_size }))
        .collect();
    let mut payload = json!({
        "datum": datum,
        "kind": classify_datum(&datum),
        "deficiency_ok": datum.deficiency_ok(),
        "factorizations": e.pairs.len(),
        "non_transitive": e.non_transitive.len(),
        "class_count": classes.len(),
        "classes": classes,
    });
    if list {
        payload["pairs"] = e.pairs.iter().map(pair_json).collect();
    }
    Ok(Outcome::ok(payload))
}

pub fn classify(
    type0: Option<String>,
    type1: Option<String>,
    tau0: Option<String>,
    tau1: Option<String>,
    degree: Option<usize>,
) -> CmdResult {
    if let (Some(t0), Some(t1), Some(n)) = (&tau0, &tau1, degree) {
        let p = MonodromyPair::parse(t0, t1, n).map_err(err)?;
        let report = p.validate();
        let datum = p.datum();
        let mut payload = json!({
            "pair": pair_json(&p),
            "datum": datum,
            "kind": classify_datum(&datum),
            "validity": report,
        });
        if report.is_valid() {
            payload["real_class"] = json!(is_real_class(&p, false).map_err(err)?);
            payload["real_class_up_to_swap"] = json!(is_real_class(&p, true).map_err(err)?);
            payload["group_order"] = json!(monodromy_group_order(&p, GROUP_CAP).ok());
        }
        return Ok(Outcome::checked(report.is_valid(), payload));
    }
    let (Some(t0), Some(t1)) = (type0, type1) else {
        return Err("give --type0 and --type1, or --tau0, --tau1 and --degree".into());
    };
    let datum = BranchDatum::parse(&t0, &t1).map_err(err)?;
    Ok(Outcome::ok(json!({
        "datum": datum,
        "kind": classify_datum(&datum),
        "deficiency_ok": datum.deficiency_ok(),
    })))
}

pub fn cheb(n: usize) -> CmdResult {
    if n == 0 {
        return Err("n must be positive".into());
    }
    let (t, u) = chebyshev_pair(n);
    let pell = polyexact::verify_pell_identity(n);
    let critical = critical_values_within(&t, &[int(-1), int(1)]).map_err(err)?;
    let closed_form = polyexact::chebyshev_binomial_sum(n) == t;
    let p = chebycheff_pair(n);
    let report = p.validate();
    let order = monodromy_group_order(&p, GROUP_CAP).ok();
    let dihedral = n < 3 || order == Some(2 * n);
    Ok(Outcome::checked(
        pell && critical && closed_form && report.is_valid() && dihedral,
        json!({
            "n": n,
            "t": poly_json(&t),
            "u": poly_json(&u),
            "pell_identity": pell,
            "closed_form_agrees": closed_form,
            "critical_values_in_pm1": critical,
            "pair": pair_json(&p),
            "datum": p.datum(),
            "validity": report,
            "group_order": order,
        }),
    ))
}

pub fn belyi(m: Option<u32>, r: Option<u32>, special: bool) -> CmdResult {
    if special {
        let p = polyexact::special_degree5();
        let critical = critical_values_within(&p, &[int(0), int(1)]).map_err(err)?;
        return Ok(Outcome::checked(
            critical,
            json!({
                "polynomial": poly_json(&p),
                "derivative": poly_json(&p.derivative()),
                "value_at_minus_1": p.eval(&int(-1)).to_string(),
                "value_at_1": p.eval(&int(1)).to_string(),
                "critical_values_in_01": critical,
            }),
        ));
    }
    let (Some(m), Some(r)) = (m, r) else {
        return Err("give --m and --r, or --special".into());
    };
    if m == 0 || r == 0 {
        return Err("m and r must be positive".into());
    }
    let p = polyexact::belyi_poly(m, r);
    let critical = critical_values_within(&p, &[int(0), int(1)]).map_err(err)?;
    let pair = belyi_pair(m as usize, r as usize);
    let report = pair.validate();
    Ok(Outcome::checked(
        critical && report.is_valid(),
        json!({
            "m": m,
            "r": r,
            "polynomial": poly_json(&p),
            "value_at_interior_point": p.eval(&rat(m as i64, (m + r) as i64)).to_string(),
            "critical_values_in_01": critical,
            "pair": pair_json(&pair),
            "datum": pair.datum(),
            "validity": report,
        }),
    ))
}

pub fn dessin(
    tau0: Option<String>,
    tau1: Option<String>,
    degree: usize,
    seed: Option<u64>,
    dot: Option<PathBuf>,
) -> CmdResult {
    let p = match (tau0, tau1, seed) {
        (Some(t0), Some(t1), _) => MonodromyPair::parse(&t0, &t1, degree).map_err(err)?,
        (None, None, Some(s)) => random_valid_pair(degree, &mut ChaCha8Rng::seed_from_u64(s)),
        _ => return Err("give --tau0 and --tau1, or --seed".into()),
    };
    let d = dessin_from_pair(&p).map_err(err)?;
    let genus = genus_of_dessin(&d).map_err(err)?;
    let faces = d.face_count().map_err(err)?;
    let mut payload = json!({
        "pair": pair_json(&p),
        "dessin": d,
        "faces": faces,
        "genus": genus,
    });
    if let Some(path) = dot {
        std::fs::write(&path, export_dot(&d)).map_err(|e| format!("{}: {e}", path.display()))?;
        payload["dot"] = json!(path.display().to_string());
    }
    Ok(Outcome::checked(genus == 0, payload))
}

fn factor_report(pm: &ProductMonodromy) -> Result<Value, String> {
    let orbits = component_orbits(pm).map_err(err)?;
    let projection = projection_check(pm, GROUP_CAP).ok();
    Ok(json!({
        "n": pm.n,
        "m": pm.m,
        "factor_count": orbits.len(),
        "orbits": orbits,
        "branches_at_infinity": gcd_branches(pm.n as u64, pm.m as u64),
        "projection": projection,
    }))
}

pub fn difffactors(kind: Option<&str>, n: Option<usize>, input: Option<PathBuf>) -> CmdResult {
    let need_n = || n.filter(|&k| k > 0).ok_or_else(|| "this kind needs a positive --n".to_string());
    let mut payload = match (kind, input) {
        (Some("cheb-sum"), _) => {
            let mut v = factor_report(&diffpoly::cheb_sum(need_n()?))?;
            v["polynomial"] = json!(format!("T_{}(x) + T_{}(y)", 2 * n.unwrap(), 2 * n.unwrap()));
            v
        }
        (Some("schur"), _) => {
            let k = need_n()?;
            let (pm, count) = diffpoly::schur(k).map_err(err)?;
            let mut v = factor_report(&pm)?;
            v["polynomial"] = json!(format!("T_{k}(x) - T_{k}(y)"));
            v["quotient_factor_count"] = json!(count.factor_count);
            v
        }
        (Some("fano"), _) => {
            let mut v = factor_report(&diffpoly::fano())?;
            v["polynomial"] = json!("f(x) - g(y), degree 7 over the Fano plane");
            v
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let j: ProductMonodromyJson = serde_json::from_str(&text).map_err(err)?;
            factor_report(&ProductMonodromy::try_from(j).map_err(err)?)?
        }
        _ => return Err("give --kind or --input".into()),
    };
    payload["kind"] = json!(kind.unwrap_or("input"));
    Ok(Outcome::ok(payload))
}

fn parse_type(t: &Option<String>) -> Result<Option<TypeTriple>, String> {
    t.as_deref()
        .map(|s| TypeTriple::parse(s).ok_or_else(|| format!("bad type `{s}`, expected r,s,t")))
        .transpose()
}

fn genera(order: u64, types: &[TypeTriple; 2]) -> Value {
    json!(types.iter().map(|t| genus_triangle(order, *t).ok()).collect::<Vec<_>>())
}

fn search_in<G: FiniteGroup>(g: &G, opts: &SearchOptions) -> Outcome {
    match search_unmixed(g, opts) {
        SearchOutcome::Found { structure, types, pairs_examined } => Outcome::ok(json!({
            "result": "found",
            "group": g.spec(),
            "order": g.order(),
            "structure": structure.to_json(g),
            "types": types,
            "genera": genera(g.order(), &types),
            "pairs_examined": pairs_examined,
        })),
        SearchOutcome::Exhausted { pairs_examined, buckets } => Outcome::ok(json!({
            "result": "none exists",
            "group": g.spec(),
            "order": g.order(),
            "pairs_examined": pairs_examined,
            "buckets": buckets,
        })),
        SearchOutcome::BudgetExceeded { pairs_examined, reason } => Outcome::ok(json!({
            "result": "budget-exceeded",
            "group": g.spec(),
            "order": g.order(),
            "pairs_examined": pairs_examined,
            "reason": reason,
        })),
    }
}

pub fn beauville_search(
    group: &str,
    type1: Option<String>,
    type2: Option<String>,
    max_pairs: u64,
    sample: Option<(u64, usize)>,
) -> CmdResult {
    let s = spec(group)?;
    let opts = SearchOptions {
        type1: parse_type(&type1)?,
        type2: parse_type(&type2)?,
        max_pairs,
        generation_budget: DEFAULT_BUDGET,
        sample,
    };
    with_group!(&s, |g| search_in(&g, &opts)).map_err(err)
}

fn verify_in<G: FiniteGroup>(g: &G, v: &Value) -> CmdResult {
    let st = Structure::from_json(g, v).map_err(err)?;
    let verdict = is_unmixed(g, &st, DEFAULT_BUDGET).map_err(err)?;
    let failure = verdict.failure.as_ref().map(|f| match f {
        UnmixedFailure::NotGenerating { pair, answer } => json!({ "not_generating": { "pair": pair, "answer": answer } }),
        UnmixedFailure::CommonElement { element, word } => {
            json!({ "common_element": { "element": g.encode(element), "word": word } })
        }
    });
    Ok(Outcome::checked(
        verdict.valid,
        json!({
            "group": g.spec(),
            "valid": verdict.valid,
            "types": verdict.types,
            "genera": genera(g.order(), &verdict.types),
            "failure": failure,
        }),
    ))
}

pub fn beauville_verify(structure: &str) -> CmdResult {
    let v = load_json(structure)?;
    let s = group_field(&v)?;
    with_group!(&s, |g| verify_in(&g, &v)).map_err(err)?
}

fn reality_in<G>(g: &G, v: &Value) -> CmdResult
where
    G: FiniteGroup,
    G::Elem: 'static,
{
    let st = Structure::from_json(g, v).map_err(err)?;
    let verdict = is_unmixed(g, &st, DEFAULT_BUDGET).map_err(err)?;
    let report = reality_verdict(g, &st, &g.automorphisms());
    Ok(Outcome::checked(
        verdict.valid,
        json!({
            "group": g.spec(),
            "structure_valid": verdict.valid,
            "real": report.verdict == Reality::RealIsomorphic,
            "report": report,
        }),
    ))
}

pub fn beauville_reality(structure: &str) -> CmdResult {
    let v = load_json(structure)?;
    let s = group_field(&v)?;
    with_group!(&s, |g| reality_in(&g, &v)).map_err(err)?
}

fn mixed_in<G, G0>(g: &G, g0: &G0, v: &Value) -> CmdResult
where
    G: FiniteGroup,
    G0: FiniteGroup<Elem = G::Elem>,
{
    let field = |k: &str| {
        v.get(k)
            .ok_or_else(|| format!("structure lacks `{k}`"))
            .and_then(|x| g.decode(x).map_err(err))
    };
    let m = MixedQuadruple { a: field("a")?, c: field("c")?, g: field("g")? };
    let verdict = is_mixed(g, g0, &m, g.order()).map_err(err)?;
    let t = beauville::type_of(g, &m.a, &m.c);
    Ok(Outcome::checked(
        verdict.valid,
        json!({
            "group": g.spec(),
            "g0": g0.spec(),
            "type": t,
            "verdict": verdict,
        }),
    ))
}

pub fn mixed_verify(structure: &str) -> CmdResult {
    let v = load_json(structure)?;
    let s = group_field(&v)?;
    let g0 = v.get("g0").and_then(Value::as_str).unwrap_or("");
    match (&s, g0) {
        (GroupSpec::H4(inner), "h2") => {
            if matches!(inner.as_ref(), GroupSpec::H4(_)) {
                return Err(format!("unsupported group {s}"));
            }
            with_group!(inner.as_ref(), |h| H4Group::new(h)
                .map_err(err)
                .and_then(|g| mixed_in(&g, &g.h2(), &v)))
            .map_err(err)?
        }
        (GroupSpec::Sym(n), "alt") => {
            let g = SymGroup::new(*n).map_err(err)?;
            let g0 = AltGroup::new(*n).map_err(err)?;
            mixed_in(&g, &g0, &v)
        }
        _ => Err(format!(
            "unsupported (group, g0) = ({s}, {g0:?}); use h4:* with \"h2\" or sym:n with \"alt\""
        )),
    }
}

fn h4_in<H: FiniteGroup>(h: H, given: &[Option<String>; 4], verify: bool) -> CmdResult {
    let st = match given {
        [Some(a1), Some(c1), Some(a2), Some(c2)] => {
            let d = |s: &String| h.decode(&element_value(s)).map_err(err);
            Structure { a1: d(a1)?, c1: d(c1)?, a2: d(a2)?, c2: d(c2)? }
        }
        [None, None, None, None] => match search_h4_quadruple(&h) {
            Some(st) => st,
            None => {
                return Ok(Outcome::checked(
                    false,
                    json!({ "inner": h.spec(), "result": "no elements meet the hypotheses" }),
                ))
            }
        },
        _ => return Err("give all of --a1, --c1, --a2, --c2 or none".into()),
    };
    let inner_json = json!({
        "a1": h.encode(&st.a1),
        "c1": h.encode(&st.c1),
        "a2": h.encode(&st.a2),
        "c2": h.encode(&st.c2),
    });
    let inner_spec = h.spec();
    let h4 = H4Group::new(h).map_err(err)?;
    let report = h4_lemma_check(&h4, &st.a1, &st.c1, &st.a2, &st.c2, verify).map_err(err)?;
    let quadruple = report.quadruple.as_ref().map(|q| {
        json!({
            "group": h4.spec(),
            "g0": "h2",
            "a": h4.encode(&q.a),
            "c": h4.encode(&q.c),
            "g": h4.encode(&q.g),
        })
    });
    let passed = report.holds() && report.mixed.as_ref().is_none_or(|m| m.valid);
    Ok(Outcome::checked(
        passed,
        json!({
            "inner": inner_spec,
            "order": h4.order(),
            "elements": inner_json,
            "types": report.types,
            "hypotheses": report.hypotheses,
            "quadruple": quadruple,
            "mixed": report.mixed,
        }),
    ))
}

pub fn h4(inner: &str, given: [Option<String>; 4], verify: bool) -> CmdResult {
    let s = spec(inner)?;
    if matches!(s, GroupSpec::H4(_)) {
        return Err("the inner group cannot itself be h4".into());
    }
    with_group!(&s, |h| h4_in(h, &given, verify)).map_err(err)?
}

pub fn snexample(n: usize, p: usize) -> CmdResult {
    let ex = beauville::sn_example(n, p).map_err(err)?;
    let passed = ex.verified() && ex.reality.verdict == Reality::NotIsomorphicToConjugate;
    Ok(Outcome::checked(passed, json!(ex)))
}

pub fn findprime(n: u64, bound: Option<u64>) -> CmdResult {
    let p = beauville::find_prime(n, bound);
    let path = beauville::prime_lemma_path(n).map(|(q, route)| json!({ "prime": q, "route": route }));
    Ok(Outcome::ok(json!({
        "n": n,
        "bound": bound,
        "prime": p,
        "residue": p.map(|q| n % q),
        "existence_argument": path,
    })))
}

pub fn table6() -> CmdResult {
    let rows = belyi_core::monodromy::table6();
    let all = rows.iter().all(|r| r.matches);
    Ok(Outcome::checked(all, json!({ "rows": rows })))
}
