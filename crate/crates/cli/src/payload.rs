//! Request schemas, one per verb. Unknown fields are rejected everywhere.

use serde::Deserialize;

/// A number or polynomial text: `3`, `"-3/4"`, `"a*b"`, `"u^2 + v^2"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

/// A quadratic form as polynomial text or as a symmetric coefficient matrix.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FormInput {
    Text(String),
    Matrix(Vec<Vec<Scalar>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormPayload {
    pub form: FormInput,
    #[serde(default)]
    pub coords: Option<Vec<String>>,
    #[serde(default)]
    pub height_cap: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalentPayload {
    pub a: FormInput,
    pub b: FormInput,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum OgPayload {
    Dimension {
        m: u64,
        n: u64,
    },
    MidComponent {
        form: FormInput,
        #[serde(default)]
        coords: Option<Vec<String>>,
    },
    ConicPair {
        a: Vec<Scalar>,
    },
    VeroneseCount {
        r: u64,
        s: u64,
    },
    GOfQ3 {
        form: FormInput,
        #[serde(default)]
        coords: Option<Vec<String>>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstructPayload {
    VeroneseQ4 {
        a: Scalar,
        b: Scalar,
    },
    VeroneseQ5 {
        a: Scalar,
        b: Scalar,
        c: Scalar,
    },
    ProjectedVeronese {
        a: Scalar,
        q: Scalar,
    },
    QuadruplePlane {
        cubic: Scalar,
    },
    Conic {
        l1: Scalar,
        l2: Scalar,
        alpha: Scalar,
    },
    Surface {
        l: Vec<Scalar>,
        a: Scalar,
    },
    Unprojection {
        form: FormInput,
        #[serde(default)]
        coords: Option<Vec<String>>,
        point: Vec<Scalar>,
        linear: Vec<Scalar>,
    },
    QuadricCone {
        l1: Scalar,
        l2: Scalar,
        alpha: Scalar,
        h3: Scalar,
    },
    SphereVeronese {
        variant: u32,
    },
    QpDeformation {
        #[serde(default)]
        t: Option<Scalar>,
    },
    PvDeformation {
        a: Scalar,
        q1: Scalar,
        q6: Scalar,
        #[serde(default)]
        t: Option<Scalar>,
    },
}

/// A quadratic map, as printed by `map:construct`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapPayload {
    pub coords: Vec<Scalar>,
    #[serde(default)]
    pub target: Option<FormInput>,
    #[serde(default)]
    pub target_coords: Option<Vec<String>>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurvePayload {
    Reduce {
        form: FormInput,
        #[serde(default)]
        coords: Option<Vec<String>>,
        map: Vec<Scalar>,
    },
    Residual {
        form: FormInput,
        #[serde(default)]
        coords: Option<Vec<String>>,
        map: Vec<Scalar>,
        psi: Vec<Scalar>,
    },
    Dp4 {
        d: i64,
        p_a: i64,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conic3Payload {
    pub form: FormInput,
    #[serde(default)]
    pub coords: Option<Vec<String>>,
    pub points: Vec<Vec<Scalar>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymPowerPayload {
    pub equation: Scalar,
    pub xs: Vec<String>,
    pub t: String,
    pub points: Vec<Vec<Scalar>>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case", deny_unknown_fields)]
pub enum VeroneseCheckPayload {
    Sigma {
        #[serde(default)]
        matrix: Option<Vec<Scalar>>,
    },
    Linkage {},
    ConicProduct {
        a: Scalar,
        b: Scalar,
        c: Scalar,
    },
    DoubleLineLocus {
        a: Scalar,
        b: Scalar,
    },
    RankStratum {
        point: Vec<Scalar>,
    },
    QuadricFromConic {
        a: Scalar,
        b: Scalar,
        c: Scalar,
    },
    TangentConic {
        a: Scalar,
        b: Scalar,
        point: Vec<Scalar>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StereoPayload {
    pub n: usize,
}
