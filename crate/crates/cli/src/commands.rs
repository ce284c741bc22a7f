//! Verb dispatch. Each handler decodes its payload, calls the library and
//! encodes the result; polynomials leave as compact grammar strings.

use quadmaps::curvemaps::{
    conic_through_three_points, degree_reduce, dp4_residual, residual_map, sym_power_residual,
};
use quadmaps::planemaps::{self, verify_on_quadric, DEFAULT_SEED};
use quadmaps::qform::{default_coords, g_of_q3, og13_conic_pair, og_dimension, real_veronese_family_count};
use quadmaps::qform::DEFAULT_HEIGHT_CAP;
use quadmaps::veronese::{
    double_line_locus_check, linkage_check, quadric_from_conic, sigma_involution_check,
    tangent_conic_rank, veronese_rank_stratum, Check, ConicProduct, Stereographic,
};
use quadmaps::{
    parse_poly, CurveMap, Error, Matrix, Poly, QuadraticForm, QuadraticMap, Rat, SymMatrix3,
};
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use crate::payload::*;
use crate::Verb;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Math { kind: String, message: String },
    Internal(String),
}

/// `CapExceeded(50)` becomes `cap_exceeded`.
fn kind_of(e: &Error) -> String {
    let debug = format!("{e:?}");
    let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_uppercase() {
            if i > 0 {
                out.push('_');
            }
            out.extend(c.to_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Math { kind: kind_of(&e), message: e.to_string() }
        }
    }
}

type Out = Result<Value, CliError>;

fn decode<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Validation(e.to_string()))
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn compact(p: &Poly) -> String {
    p.to_string().replace(' ', "")
}

fn polys_json(ps: &[Poly]) -> Value {
    Value::from(ps.iter().map(compact).collect::<Vec<_>>())
}

fn rats_json(v: &[Rat]) -> Value {
    Value::from(v.iter().map(|r| r.to_string()).collect::<Vec<_>>())
}

fn matrix_json(m: &Matrix<Rat>) -> Value {
    Value::from(m.to_rows().iter().map(|r| rats_json(r)).collect::<Vec<_>>())
}

fn to_poly(s: &Scalar) -> Result<Poly, CliError> {
    match s {
        Scalar::Int(n) => Ok(Poly::from_i64(*n)),
        Scalar::Text(t) => Ok(parse_poly(t, None)?),
    }
}

fn to_polys(v: &[Scalar]) -> Result<Vec<Poly>, CliError> {
    v.iter().map(to_poly).collect()
}

fn to_rat(s: &Scalar) -> Result<Rat, CliError> {
    to_poly(s)?
        .as_constant()
        .ok_or_else(|| invalid(format!("expected a rational number, got {s:?}")))
}

fn to_rats(v: &[Scalar]) -> Result<Vec<Rat>, CliError> {
    v.iter().map(to_rat).collect()
}

fn to_form(f: &FormInput, coords: Option<&Vec<String>>) -> Result<QuadraticForm, CliError> {
    match f {
        FormInput::Text(t) => Ok(QuadraticForm::parse(t, coords.map(Vec::as_slice))?),
        FormInput::Matrix(rows) => {
            let rows: Vec<Vec<Poly>> = rows.iter().map(|r| to_polys(r)).collect::<Result<_, _>>()?;
            if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
                return Err(invalid("form matrix must be square and nonempty"));
            }
            let names = coords.cloned().unwrap_or_else(|| default_coords(rows.len()));
            Ok(QuadraticForm::from_gram(names, Matrix::from_rows(rows))?)
        }
    }
}

fn form_json(q: &QuadraticForm) -> (Value, Value) {
    (Value::from(compact(&q.to_poly())), Value::from(q.coords().to_vec()))
}

fn map_json(m: &QuadraticMap) -> Value {
    let mut out = Map::new();
    out.insert("coords".into(), polys_json(m.coords()));
    if let Some(q) = m.target() {
        let (t, tc) = form_json(q);
        out.insert("target".into(), t);
        out.insert("target_coords".into(), tc);
    }
    out.insert("params".into(), Value::from(m.params()));
    Value::Object(out)
}

fn curve_json(c: &CurveMap) -> Value {
    let mut out = Map::new();
    out.insert("degree".into(), Value::from(c.degree()));
    out.insert("coords".into(), polys_json(c.coords()));
    if let Some(q) = c.target() {
        let (t, tc) = form_json(q);
        out.insert("target".into(), t);
        out.insert("target_coords".into(), tc);
    }
    Value::Object(out)
}

fn check_json(c: &Check) -> Value {
    let mut out = Map::new();
    out.insert("check_name".into(), Value::from(c.name.clone()));
    out.insert("status".into(), Value::from(if c.passed { "pass" } else { "fail" }));
    if let Some(w) = &c.witness {
        out.insert("witness".into(), Value::from(w.replace(' ', "")));
    }
    Value::Object(out)
}

/// One report for a group of checks, passing when all of them pass.
fn group_json(name: &str, checks: &[Check]) -> Value {
    let passed = checks.iter().all(|c| c.passed);
    json!({
        "check_name": name,
        "status": if passed { "pass" } else { "fail" },
        "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
    })
}

pub fn run(verb: Verb, text: &str, seed: Option<u64>) -> Out {
    match verb {
        Verb::QformAnalyze => analyze(decode(text)?),
        Verb::QformWitt => witt(decode(text)?),
        Verb::QformIsotropic => isotropic(decode(text)?),
        Verb::QformEquivalent => {
            let p: EquivalentPayload = decode(text)?;
            let (a, b) = (to_form(&p.a, None)?, to_form(&p.b, None)?);
            Ok(json!({ "equivalent": a.equivalent_over_q(&b)? }))
        }
        Verb::QformOg => og(decode(text)?),
        Verb::MapConstruct => Ok(map_json(&construct(decode(text)?)?)),
        Verb::MapVerify => verify(decode(text)?),
        Verb::MapClassify => classify(decode(text)?, seed),
        Verb::CurveReduce => curve(decode(text)?),
        Verb::CurveConic3 => conic3(decode(text)?),
        Verb::CurveSympower => sympower(decode(text)?),
        Verb::VeroneseCheck => veronese_check(decode(text)?),
        Verb::SphereStereo => {
            let p: StereoPayload = decode(text)?;
            let st = Stereographic::new(p.n)?;
            let fracs = |fs: &[quadmaps::veronese::Fraction]| {
                fs.iter()
                    .map(|f| json!({ "num": compact(&f.num), "den": compact(&f.den) }))
                    .collect::<Vec<_>>()
            };
            let checks = st.checks();
            let passed = checks.iter().all(|c| c.passed);
            Ok(json!({
                "n": p.n,
                "sphere": compact(&st.sphere()),
                "forward": fracs(&st.forward),
                "inverse": fracs(&st.inverse),
                "status": if passed { "pass" } else { "fail" },
                "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
            }))
        }
    }
}

fn analyze(p: FormPayload) -> Out {
    let q = to_form(&p.form, p.coords.as_ref())?;
    let cap = p.height_cap.unwrap_or(DEFAULT_HEIGHT_CAP);
    let rank = q.rank()?;
    let sig = q.signature()?;
    let disc = q.numeric_discriminant()?;
    let mut out = json!({
        "dim": q.dim(),
        "rank": rank,
        "disc": disc.representative().to_string(),
        "signature": [sig.positives, sig.negatives],
        "degenerate": rank < q.dim(),
    });
    if rank == q.dim() {
        let wd = q.witt_decompose(cap)?;
        let kernel = if wd.kernel_diagonal.is_empty() {
            "0".to_string()
        } else {
            compact(&wd.normalized_kernel_form()?.to_poly())
        };
        out["witt_index"] = Value::from(wd.witt_index);
        out["kernel"] = Value::from(kernel);
        out["kernel_coords"] = Value::from(wd.kernel_coords);
    }
    Ok(out)
}

fn witt(p: FormPayload) -> Out {
    let q = to_form(&p.form, p.coords.as_ref())?;
    let wd = q.witt_decompose(p.height_cap.unwrap_or(DEFAULT_HEIGHT_CAP))?;
    Ok(json!({
        "coords": q.coords(),
        "witt_index": wd.witt_index,
        "transform": matrix_json(&wd.transform),
        "block_form": matrix_json(&wd.block_form()),
        "kernel_diagonal": rats_json(&wd.kernel_diagonal),
        "kernel_coords": wd.kernel_coords,
    }))
}

fn isotropic(p: FormPayload) -> Out {
    let q = to_form(&p.form, p.coords.as_ref())?;
    if !q.is_isotropic()? {
        return Ok(json!({ "isotropic": false, "witness": null }));
    }
    let w = q.find_isotropic_vector(p.height_cap.unwrap_or(DEFAULT_HEIGHT_CAP))?;
    Ok(json!({ "isotropic": true, "witness": rats_json(&w) }))
}

fn og(p: OgPayload) -> Out {
    match p {
        OgPayload::Dimension { m, n } => Ok(json!({ "dimension": og_dimension(m, n)? })),
        OgPayload::MidComponent { form, coords } => {
            let q = to_form(&form, coords.as_ref())?;
            Ok(json!({ "class": q.mid_og_component_class()?.representative().to_string() }))
        }
        OgPayload::ConicPair { a } => {
            let a: [Rat; 5] = to_rats(&a)?
                .try_into()
                .map_err(|v: Vec<Rat>| invalid(format!("expected 5 coefficients, got {}", v.len())))?;
            let (conic, second) = og13_conic_pair(&a)?;
            let (c, cc) = form_json(&conic);
            let (s, sc) = form_json(&second);
            Ok(json!({ "conic": c, "conic_coords": cc, "second": s, "second_coords": sc }))
        }
        OgPayload::VeroneseCount { r, s } => Ok(json!({ "count": real_veronese_family_count(r, s)? })),
        OgPayload::GOfQ3 { form, coords } => {
            let g = g_of_q3(&to_form(&form, coords.as_ref())?)?;
            let (f, fc) = form_json(&g);
            Ok(json!({ "form": f, "coords": fc }))
        }
    }
}

fn construct(p: ConstructPayload) -> Result<QuadraticMap, CliError> {
    use ConstructPayload as C;
    let t_or_default = |t: Option<Scalar>| t.map_or_else(|| Ok(Poly::var("t")), |t| to_poly(&t));
    Ok(match p {
        C::VeroneseQ4 { a, b } => planemaps::construct_veronese_q4(&to_poly(&a)?, &to_poly(&b)?)?,
        C::VeroneseQ5 { a, b, c } => {
            planemaps::construct_veronese_q5(&to_poly(&a)?, &to_poly(&b)?, &to_poly(&c)?)?
        }
        C::ProjectedVeronese { a, q } => planemaps::construct_projected_veronese(&to_poly(&a)?, &to_poly(&q)?)?,
        C::QuadruplePlane { cubic } => planemaps::construct_quadruple_plane(&to_poly(&cubic)?)?,
        C::Conic { l1, l2, alpha } => {
            planemaps::construct_conic_map(&to_poly(&l1)?, &to_poly(&l2)?, &to_poly(&alpha)?)?
        }
        C::Surface { l, a } => {
            let l = to_polys(&l)?;
            if l.len() != 4 {
                return Err(invalid(format!("expected 4 linear forms, got {}", l.len())));
            }
            planemaps::construct_surface_map([&l[0], &l[1], &l[2], &l[3]], &to_poly(&a)?)?
        }
        C::Unprojection { form, coords, point, linear } => {
            let q = to_form(&form, coords.as_ref())?;
            planemaps::construct_unprojection(&q, &to_polys(&point)?, &to_polys(&linear)?)?
        }
        C::QuadricCone { l1, l2, alpha, h3 } => planemaps::construct_quadric_cone_map(
            &to_poly(&l1)?,
            &to_poly(&l2)?,
            &to_poly(&alpha)?,
            &to_poly(&h3)?,
        )?,
        C::SphereVeronese { variant } => planemaps::construct_sphere_veronese(variant)?,
        C::QpDeformation { t } => planemaps::construct_qp_deformation(&t_or_default(t)?)?,
        C::PvDeformation { a, q1, q6, t } => planemaps::construct_pv_deformation(
            &to_rat(&a)?,
            &to_poly(&q1)?,
            &to_poly(&q6)?,
            &t_or_default(t)?,
        )?,
    })
}

fn verify(p: MapPayload) -> Out {
    let target = p.target.as_ref().ok_or_else(|| invalid("map:verify requires a target"))?;
    let q = to_form(target, p.target_coords.as_ref())?;
    let m = QuadraticMap::new(to_polys(&p.coords)?)?;
    let verified = verify_on_quadric(&q, &m)?;
    let mut out = json!({ "verified": verified });
    if !verified {
        out["defect"] = Value::from(compact(&q.try_eval(m.coords())?));
    }
    Ok(out)
}

fn classify(p: MapPayload, cli_seed: Option<u64>) -> Out {
    let mut m = QuadraticMap::new(to_polys(&p.coords)?)?;
    if let Some(target) = &p.target {
        m = m.with_target(to_form(target, p.target_coords.as_ref())?)?;
    }
    let c = m.classify_seeded(cli_seed.or(p.seed).unwrap_or(DEFAULT_SEED));
    let mut out = json!({ "label": c.label.as_str(), "span_dim": c.span_dim });
    if let Some(r) = c.center_rank {
        out["center_rank"] = Value::from(r);
    }
    if let Some(center) = &c.center {
        out["center"] = rats_json(center);
    }
    if let Some(r) = c.kernel_rank {
        out["kernel_rank"] = Value::from(r);
    }
    if let Some(d) = c.kernel_dim {
        out["kernel_dim"] = Value::from(d);
    }
    if let Some(s) = c.seed {
        out["seed"] = Value::from(s);
        out["specializations"] = Value::from(
            c.specializations
                .iter()
                .map(|sp| {
                    Value::Object(sp.iter().map(|(k, v)| (k.clone(), Value::from(v.to_string()))).collect())
                })
                .collect::<Vec<_>>(),
        );
    }
    Ok(out)
}

fn curve(p: CurvePayload) -> Out {
    match p {
        CurvePayload::Reduce { form, coords, map } => {
            let q = to_form(&form, coords.as_ref())?;
            let phi = CurveMap::new(to_polys(&map)?, Some(q.clone()))?;
            Ok(curve_json(&degree_reduce(&q, &phi)?))
        }
        CurvePayload::Residual { form, coords, map, psi } => {
            let q = to_form(&form, coords.as_ref())?;
            let phi = CurveMap::new(to_polys(&map)?, Some(q.clone()))?;
            let psi = CurveMap::new(to_polys(&psi)?, Some(q.clone()))?;
            Ok(curve_json(&residual_map(&q, &phi, &psi)?))
        }
        CurvePayload::Dp4 { d, p_a } => {
            let r = dp4_residual(d, p_a)?;
            Ok(json!({ "degree": r.degree, "genus": r.genus, "guaranteed": r.guaranteed }))
        }
    }
}

fn conic3(p: Conic3Payload) -> Out {
    let q = to_form(&p.form, p.coords.as_ref())?;
    let pts: Vec<Vec<Rat>> = p.points.iter().map(|v| to_rats(v)).collect::<Result<_, _>>()?;
    if pts.len() != 3 {
        return Err(invalid(format!("expected 3 points, got {}", pts.len())));
    }
    Ok(curve_json(&conic_through_three_points(&q, [&pts[0], &pts[1], &pts[2]])?))
}

fn sympower(p: SymPowerPayload) -> Out {
    let f = to_poly(&p.equation)?;
    let xs: Vec<&str> = p.xs.iter().map(String::as_str).collect();
    let pts: Vec<Vec<Rat>> = p.points.iter().map(|v| to_rats(v)).collect::<Result<_, _>>()?;
    let r = sym_power_residual(&f, &xs, &p.t, &pts)?;
    Ok(json!({
        "interpolant": polys_json(&r.interpolant),
        "residual": compact(&r.residual),
        "anchors": [rats_json(&r.anchors[0]), rats_json(&r.anchors[1])],
    }))
}

fn veronese_check(p: VeroneseCheckPayload) -> Out {
    use VeroneseCheckPayload as V;
    match p {
        V::Sigma { matrix } => {
            let m = match matrix {
                Some(entries) => SymMatrix3::from_p5(&to_polys(&entries)?)?,
                None => SymMatrix3::generic(),
            };
            Ok(check_json(&sigma_involution_check(&m)))
        }
        V::Linkage {} => Ok(group_json("linkage", &linkage_check())),
        V::ConicProduct { a, b, c } => {
            let cp = ConicProduct::new(&to_poly(&a)?, &to_poly(&b)?, &to_poly(&c)?)?;
            let mut out = group_json("conic_product", &cp.checks());
            let (t, tc) = form_json(&cp.target);
            out["psi"] = polys_json(&cp.psi);
            out["target"] = t;
            out["target_coords"] = tc;
            Ok(out)
        }
        V::DoubleLineLocus { a, b } => Ok(check_json(&double_line_locus_check(&to_rat(&a)?, &to_rat(&b)?)?)),
        V::RankStratum { point } => {
            let rank = veronese_rank_stratum(&to_rats(&point)?)?;
            Ok(json!({ "check_name": "rank_stratum", "status": "pass", "rank": rank }))
        }
        V::QuadricFromConic { a, b, c } => {
            let q = quadric_from_conic(&to_poly(&a)?, &to_poly(&b)?, &to_poly(&c)?)?;
            let (f, fc) = form_json(&q);
            Ok(json!({ "check_name": "quadric_from_conic", "status": "pass", "form": f, "coords": fc }))
        }
        V::TangentConic { a, b, point } => {
            let (conic, rank) = tangent_conic_rank(&to_rat(&a)?, &to_rat(&b)?, &to_rats(&point)?)?;
            Ok(json!({
                "check_name": "tangent_conic",
                "status": "pass",
                "conic": compact(&conic),
                "rank": rank,
            }))
        }
    }
}
