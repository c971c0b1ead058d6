//! JSON input formats.
//!
//! An ideal is `{"vars": n, "gens": [[e_0, ..., e_{n-1}], ...]}`; a graph is
//! `{"graph": {"vars": n, "edges": [[u, v], ...]}}` and stands for its flag
//! ideal (squares plus non-edges).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::flag::{Graph, GraphJson};
use crate::monomial::MonomialIdeal;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct IdealJson {
    pub vars: usize,
    pub gens: Vec<Vec<u16>>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(ideal: &MonomialIdeal) -> Self {
        IdealJson {
            vars: ideal.num_vars(),
            gens: ideal.generators().iter().map(|g| g.exponents().to_vec()).collect(),
        }
    }
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = Error;

    fn try_from(j: IdealJson) -> Result<MonomialIdeal> {
        MonomialIdeal::from_exponents(j.vars, j.gens)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: GraphJson,
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        GraphFile { graph: GraphJson::from(g) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Ideal(MonomialIdeal),
    Graph(Graph),
}

impl Input {
    pub fn parse(text: &str) -> Result<Input> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let decode = |e: serde_json::Error| Error::Parse(e.to_string());
        if value.get("graph").is_some() {
            let file: GraphFile = serde_json::from_value(value).map_err(decode)?;
            return Ok(Input::Graph(Graph::try_from(file.graph)?));
        }
        if value.get("gens").is_some() {
            let j: IdealJson = serde_json::from_value(value).map_err(decode)?;
            return Ok(Input::Ideal(MonomialIdeal::try_from(j)?));
        }
        Err(Error::Parse("expected an object with a `graph` or a `gens` field".into()))
    }

    pub fn ideal(&self) -> MonomialIdeal {
        match self {
            Input::Ideal(i) => i.clone(),
            Input::Graph(g) => g.to_ideal(),
        }
    }

    /// The graph itself, or the graph of a quadratic ideal containing all squares.
    pub fn graph(&self) -> Result<Graph> {
        match self {
            Input::Graph(g) => Ok(g.clone()),
            Input::Ideal(i) => Graph::from_quadratic_ideal(i),
        }
    }
}
