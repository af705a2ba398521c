//! JSON file formats for posets, maps, algebras, forms and many-valued
//! tables.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{ApproximationAlgebra, Orientation};
use crate::decompose::ApproximatingForm;
use crate::error::{Error, OrderError};
use crate::order::{Poset, PosetMap};
use crate::theta::{MvTable, ThetaForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

impl PosetFile {
    pub fn of(m: &Poset) -> Self {
        PosetFile {
            elements: m.ids().to_vec(),
            covers: m
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| (m.id(a).to_string(), m.id(b).to_string()))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<Poset, OrderError> {
        Poset::build(&self.elements, &self.covers)
    }
}

/// A poset given inline or by name: `cube:n`, `chain:q` or `grid:q:n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetRef {
    Named(String),
    Inline(PosetFile),
}

impl PosetRef {
    pub fn resolve(&self) -> Result<Poset, Error> {
        let name = match self {
            PosetRef::Inline(file) => return Ok(file.build()?),
            PosetRef::Named(name) => name,
        };
        let bad = || {
            Error::Input(format!(
                "unknown poset `{name}`; expected cube:n, chain:q or grid:q:n"
            ))
        };
        let nums: Vec<usize> = name
            .split(':')
            .skip(1)
            .map(|s| s.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        Ok(match (name.split(':').next(), nums.as_slice()) {
            (Some("cube"), [n]) => Poset::boolean_cube(*n)?,
            (Some("chain"), [q]) => Poset::chain(*q)?,
            (Some("grid"), [q, n]) => Poset::grid(*q, *n)?,
            _ => return Err(bad()),
        })
    }

    /// The shortest reference that resolves back to `m`.
    pub fn describe(m: &Poset) -> Self {
        match m.grid_shape() {
            Some((2, n, false)) => PosetRef::Named(format!("cube:{n}")),
            Some((q, 1, false)) => PosetRef::Named(format!("chain:{q}")),
            Some((q, n, false)) => PosetRef::Named(format!("grid:{q}:{n}")),
            _ => PosetRef::Inline(PosetFile::of(m)),
        }
    }
}

/// A level given by id or by its numeric name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LevelRef {
    Index(usize),
    Id(String),
}

impl LevelRef {
    fn id(&self) -> String {
        match self {
            LevelRef::Index(i) => i.to_string(),
            LevelRef::Id(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub domain: PosetRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain: Option<PosetRef>,
    pub values: BTreeMap<String, LevelRef>,
}

impl MapFile {
    pub fn of(map: &PosetMap) -> Self {
        let d = map.domain();
        MapFile {
            domain: PosetRef::describe(d),
            codomain: Some(PosetRef::describe(map.codomain())),
            values: (0..d.len())
                .map(|x| {
                    (
                        d.id(x).to_string(),
                        LevelRef::Id(map.codomain().id(map.get(x)).to_string()),
                    )
                })
                .collect(),
        }
    }

    /// Builds the map. With `levels` given (an algebra's level poset) the
    /// values are read against it; otherwise the declared codomain is used.
    pub fn resolve(&self, levels: Option<&Arc<Poset>>) -> Result<PosetMap, Error> {
        let domain = Arc::new(self.domain.resolve()?);
        let codomain = match (levels, &self.codomain) {
            (Some(l), Some(c)) => {
                let declared = c.resolve()?;
                if declared.ids() != l.ids() {
                    return Err(Error::Input(
                        "map codomain does not match the algebra's levels".into(),
                    ));
                }
                Arc::clone(l)
            }
            (Some(l), None) => Arc::clone(l),
            (None, Some(c)) => Arc::new(c.resolve()?),
            (None, None) => return Err(Error::Input("map has no codomain".into())),
        };
        for key in self.values.keys() {
            domain.index_of(key)?;
        }
        let table = (0..domain.len())
            .map(|x| {
                let level = self
                    .values
                    .get(domain.id(x))
                    .ok_or_else(|| Error::Input(format!("no value for `{}`", domain.id(x))))?;
                Ok(codomain.index_of(&level.id())?)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(PosetMap::new(domain, codomain, table)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub levels: usize,
    pub orientation: Orientation,
    pub boxminus: Vec<Vec<usize>>,
    pub boxplus: Vec<Vec<usize>>,
    pub dot: Vec<usize>,
}

impl AlgebraFile {
    pub fn of(alg: &ApproximationAlgebra) -> Self {
        AlgebraFile {
            name: Some(alg.name().to_string()),
            levels: alg.q(),
            orientation: alg.orientation(),
            boxminus: alg.minus_table(),
            boxplus: alg.plus_table(),
            dot: alg.dot_table().to_vec(),
        }
    }

    pub fn build(&self) -> Result<ApproximationAlgebra, Error> {
        Ok(ApproximationAlgebra::from_tables(
            self.name.as_deref().unwrap_or("custom"),
            self.levels,
            self.orientation,
            self.boxminus.clone(),
            self.boxplus.clone(),
            self.dot.clone(),
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Named(String),
    Inline(AlgebraFile),
}

impl AlgebraRef {
    pub fn resolve(&self) -> Result<ApproximationAlgebra, Error> {
        match self {
            AlgebraRef::Named(sel) => Ok(ApproximationAlgebra::from_selector(sel)?),
            AlgebraRef::Inline(file) => file.build(),
        }
    }

    pub fn of(alg: &ApproximationAlgebra) -> Self {
        if alg.is_builtin() {
            AlgebraRef::Named(alg.name().to_string())
        } else {
            AlgebraRef::Inline(AlgebraFile::of(alg))
        }
    }

    /// A selector, or a path to an algebra JSON file when one exists.
    pub fn from_arg(arg: &str) -> Result<Self, Error> {
        let path = Path::new(arg);
        if path.is_file() {
            let text = std::fs::read_to_string(path)?;
            return Ok(serde_json::from_str(&text)?);
        }
        Ok(AlgebraRef::Named(arg.to_string()))
    }
}

/// Parts as level ids in the domain's canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFile {
    pub orientation: Orientation,
    pub algebra: AlgebraRef,
    pub domain: PosetRef,
    pub parts: Vec<Vec<String>>,
}

impl FormFile {
    pub fn of(form: &ApproximatingForm, alg: &ApproximationAlgebra) -> Self {
        let domain = form.domain();
        FormFile {
            orientation: form.orientation,
            algebra: AlgebraRef::of(alg),
            domain: PosetRef::describe(domain),
            parts: form
                .parts
                .iter()
                .map(|p| {
                    p.table()
                        .iter()
                        .map(|&v| p.codomain().id(v).to_string())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn resolve(&self) -> Result<(ApproximatingForm, ApproximationAlgebra), Error> {
        let alg = self.algebra.resolve()?;
        let domain = Arc::new(self.domain.resolve()?);
        let levels = alg.levels();
        if self.parts.is_empty() {
            return Err(Error::Input("form has no parts".into()));
        }
        let parts = self
            .parts
            .iter()
            .map(|row| {
                if row.len() != domain.len() {
                    return Err(Error::Order(OrderError::TableLength {
                        expected: domain.len(),
                        found: row.len(),
                    }));
                }
                let table = row
                    .iter()
                    .map(|id| levels.index_of(id))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(PosetMap::new(
                    Arc::clone(&domain),
                    Arc::clone(levels),
                    table,
                )?)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let form = ApproximatingForm {
            orientation: self.orientation,
            parts,
            algebra: alg.name().to_string(),
        };
        Ok((form, alg))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvTableFile {
    pub q: usize,
    pub n: usize,
    pub values: Vec<usize>,
}

impl MvTableFile {
    pub fn build(&self) -> Result<MvTable, Error> {
        Ok(MvTable::new(self.q, self.n, self.values.clone())?)
    }
}

#[derive(Serialize)]
struct LeafJson {
    slot: String,
    label: String,
    values: Vec<String>,
}

/// JSON view of a formula-level decomposition.
pub fn theta_form_json(form: &ThetaForm) -> serde_json::Value {
    let leaves: Vec<LeafJson> = form
        .substitution
        .iter()
        .enumerate()
        .map(|(i, t)| LeafJson {
            slot: format!("z{}", i + 1),
            label: t.label(),
            values: t
                .map()
                .table()
                .iter()
                .map(|&v| t.map().codomain().id(v).to_string())
                .collect(),
        })
        .collect();
    serde_json::json!({
        "orientation": form.orientation,
        "algebra": form.algebra,
        "skeleton": form.skeleton.to_string(),
        "leaves": leaves,
        "unaries": form.unaries,
        "grounded": form.grounded.as_ref().map(ToString::to_string),
    })
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: impl AsRef<Path>) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{decompose, Strategy};

    #[test]
    fn poset_refs() {
        assert_eq!(PosetRef::Named("cube:2".into()).resolve().unwrap().len(), 4);
        assert_eq!(
            PosetRef::Named("grid:3:2".into()).resolve().unwrap().len(),
            9
        );
        assert!(PosetRef::Named("cube".into()).resolve().is_err());
        let diamond: PosetFile =
            serde_json::from_str(r#"{"elements":["bot","b","a","top"],"covers":[["bot","a"],["bot","b"],["a","top"],["b","top"]]}"#)
                .unwrap();
        let m = diamond.build().unwrap();
        assert_eq!(PosetRef::describe(&m).resolve().unwrap(), m);
        let cube = Poset::boolean_cube(3).unwrap();
        assert_eq!(PosetRef::describe(&cube), PosetRef::Named("cube:3".into()));
    }

    #[test]
    fn map_round_trip() {
        let text =
            r#"{"domain":"cube:2","codomain":"chain:2","values":{"00":0,"01":"1","10":1,"11":0}}"#;
        let file: MapFile = serde_json::from_str(text).unwrap();
        let map = file.resolve(None).unwrap();
        assert_eq!(map.table(), &[0, 1, 1, 0]);
        let again = MapFile::of(&map).resolve(None).unwrap();
        assert_eq!(again, map);
        let missing: MapFile =
            serde_json::from_str(r#"{"domain":"cube:1","codomain":"chain:2","values":{"0":0}}"#)
                .unwrap();
        assert!(missing.resolve(None).is_err());
    }

    #[test]
    fn algebra_and_form_round_trip() {
        let alg = ApproximationAlgebra::from_selector("boolean-dual").unwrap();
        let file: MapFile =
            serde_json::from_str(r#"{"domain":"cube:2","values":{"00":0,"01":1,"10":1,"11":0}}"#)
                .unwrap();
        let psi = file.resolve(Some(alg.levels())).unwrap();
        let (form, _) = decompose(&psi, &alg, Strategy::T1).unwrap();
        let json = serde_json::to_string(&FormFile::of(&form, &alg)).unwrap();
        let (back, alg2) = serde_json::from_str::<FormFile>(&json)
            .unwrap()
            .resolve()
            .unwrap();
        assert_eq!(back, form);
        assert!(back.verify(&psi, &alg2).unwrap().ok);

        let inline = AlgebraFile::of(&alg);
        let rebuilt = inline.build().unwrap();
        assert_eq!(rebuilt.minus_table(), alg.minus_table());
        assert_eq!(rebuilt.orientation(), alg.orientation());
        // a table-defined algebra folds ⊞, which agrees with the meet here
        let (refolded, _) = decompose(&psi, &rebuilt, Strategy::T1).unwrap();
        assert_eq!(refolded.parts, form.parts);
    }
}
