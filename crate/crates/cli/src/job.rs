//! A single request to the tool, whether it came from flags or a job file.

use groupcode::abelian::{self, Indicator, SplittingField};
use groupcode::code::{self, DEFAULT_DISTANCE_CAP};
use groupcode::{ideal, parse_field, parse_group, parse_modulus, vector_string, Error, GroupAlgebra, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Analyze,
    Idempotent,
    Orbits,
    Indicator,
    Mindist,
    Classify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Idempotent => "idempotent",
            Command::Orbits => "orbits",
            Command::Indicator => "indicator",
            Command::Mindist => "mindist",
            Command::Classify => "classify",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub command: Command,
    pub field: String,
    pub group: String,
    /// Comma-separated element listing, same as `;order=[...]` on the group.
    #[serde(default)]
    pub order: Option<String>,
    #[serde(default)]
    pub elem: Option<String>,
    #[serde(default)]
    pub cap: Option<u64>,
    /// Roots of unity per cyclic factor, e.g. `1,2;1,2,a^2,a^6`.
    #[serde(default)]
    pub orderings: Option<String>,
    #[serde(default)]
    pub ext_modulus: Option<String>,
    #[serde(default)]
    pub field_symbol: Option<String>,
    #[serde(default = "yes")]
    pub notes: bool,
}

fn yes() -> bool {
    true
}

impl Job {
    pub fn cap(&self) -> u64 {
        self.cap
            .or_else(|| std::env::var("GROUPCODE_CAP").ok().and_then(|v| v.parse().ok()))
            .unwrap_or(DEFAULT_DISTANCE_CAP)
    }

    fn algebra(&self) -> Result<GroupAlgebra> {
        let mut field = parse_field(&self.field)?;
        if let Some(sym) = &self.field_symbol {
            field = field.with_symbol(sym);
        }
        let mut group = parse_group(&self.group)?;
        if let Some(order) = &self.order {
            let words: Vec<&str> = order.trim_matches(['[', ']']).split(',').map(str::trim).collect();
            group = group.with_ordering(&words)?;
        }
        Ok(GroupAlgebra::new(&field, &group))
    }

    fn element(&self, r: &GroupAlgebra) -> Result<groupcode::AlgebraElement> {
        let text = self
            .elem
            .as_deref()
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("`{}` needs an element (--elem)", self.command.name()) })?;
        r.parse_element(text)
    }

    /// The command's result, without the envelope.
    pub fn result(&self) -> Result<Value> {
        let r = self.algebra()?;
        match self.command {
            Command::Analyze => {
                let b = self.element(&r)?;
                Ok(to_json(&ideal::dimension_exact(&b)?))
            }
            Command::Idempotent => {
                let b = self.element(&r)?;
                let e = ideal::idempotent_generator(&b)?;
                Ok(json!({
                    "idempotent": e.to_expression(),
                    "vector": e.to_vector_string(),
                    "dimension": e.ideal_dimension_rank(),
                }))
            }
            Command::Orbits => {
                let part = abelian::q_orbits(r.group(), r.field().q())?;
                let labels: Vec<Vec<&str>> =
                    part.orbits.iter().map(|o| o.iter().map(|&g| r.group().label(g)).collect()).collect();
                let mut out = json!({ "q": part.q, "orbits": labels, "sizes": part.sizes() });
                if self.elem.is_some() {
                    let b = self.element(&r)?;
                    out["dimension"] = json!(abelian::dimension_semisimple_abelian(&b)?);
                }
                Ok(out)
            }
            Command::Indicator => {
                let ext = match &self.ext_modulus {
                    Some(m) => Some(parse_modulus(r.field().p(), m)?),
                    None => None,
                };
                let split = SplittingField::new(r.group(), r.field(), ext.as_deref())?;
                let orderings = match &self.orderings {
                    Some(t) => Some(abelian::parse_orderings(&split.extension, t)?),
                    None => None,
                };
                let extension = split.extension.clone();
                let ind = Indicator::new(&r, split, orderings)?;
                let mut out = json!({
                    "extension": extension.to_string(),
                    "theta": extension.format(ind.splitting.theta),
                    "orderings": ind.orderings_as_text(),
                    "a": ind.a,
                    "d": ind.d,
                });
                if self.elem.is_some() {
                    let e = self.element(&r)?;
                    let (dim, weights) = abelian::dimension_via_indicator(&ind, &e)?;
                    out["element"] = json!({ "dimension": dim, "indicator": vector_string(&extension, &weights) });
                }
                Ok(out)
            }
            Command::Mindist => {
                let b = self.element(&r)?;
                let basis: Vec<Vec<groupcode::Fe>> =
                    code::ideal_basis(&b)?.iter().map(|e| e.coeffs().to_vec()).collect();
                let distance = code::min_distance(r.field(), &basis, self.cap())?;
                Ok(json!({ "n": r.dim(), "k": basis.len(), "distance": distance }))
            }
            Command::Classify => {
                let b = self.element(&r)?;
                let report = code::classify(&b, self.cap())?;
                let parameters = report.parameters();
                let mut report = to_json(&report);
                report["parameters"] = json!(parameters);
                if !self.notes {
                    report.as_object_mut().expect("object").remove("conjecture_notes");
                }
                Ok(report)
            }
        }
    }

    /// The full output document, for success or failure.
    pub fn run(&self) -> (Value, Option<Error>) {
        let mut doc = json!({
            "schema": SCHEMA,
            "command": self.command.name(),
            "input": {
                "field": self.field,
                "group": self.group,
            },
        });
        for (key, v) in [("order", &self.order), ("elem", &self.elem), ("orderings", &self.orderings)] {
            if let Some(v) = v {
                doc["input"][key] = json!(v);
            }
        }
        match self.result() {
            Ok(v) => {
                doc["result"] = v;
                (doc, None)
            }
            Err(e) => {
                doc["error"] = json!({ "code": e.code(), "message": e.to_string() });
                (doc, Some(e))
            }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize to JSON")
}
