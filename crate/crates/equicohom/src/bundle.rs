//! The problem-bundle file format and its compilation into validated
//! in-memory structures.
//!
//! A bundle is one JSON document: the group's multiplication table, the
//! simplicial set with face tables in degeneracy normal form, per-element
//! permutations, coefficient data keyed by subgroup (sorted element lists
//! joined by commas) and by morphism (`SRC->DST@g` with any coset
//! representative g), twisting labels per subgroup, and an optional path
//! system. The tool computes the subgroup lattice itself and rejects
//! bundles missing data for any subgroup.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::equivariant::{FinGroup, GSimplicialSet, OrbitCategory};
use crate::error::{Error, Result};
use crate::localsys::{
    CoefficientData, OGAbelianGroup, OGAction, OGGroup, PathStep, PathSystem, TwistingCocycle,
};
use crate::simplicial::{DegeneracyWord, FormalSimplex, SimplicialSet};
use crate::zmodule::{AbHom, FGAbelianGroup, IntMatrix};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpec {
    pub group: GroupSpec,
    pub space: SpaceSpec,
    pub coefficients: CoefficientsSpec,
    #[serde(default)]
    pub twisting: BTreeMap<String, BTreeMap<String, usize>>,
    #[serde(default)]
    pub paths: Option<PathsSpec>,
    #[serde(default)]
    pub degrees: Option<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub multiplication: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub truncation: usize,
    /// Per dimension, the nondegenerate simplex names.
    pub simplices: Vec<Vec<String>>,
    /// Per named simplex of positive dimension, its faces in order.
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<FaceSpec>>,
    /// Per non-identity group element (as a decimal string), the
    /// permutation of every named simplex.
    #[serde(default)]
    pub action: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceSpec {
    pub base: String,
    #[serde(default)]
    pub degeneracies: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientsSpec {
    pub m0: AbelianDiagramSpec,
    #[serde(default)]
    pub pi: Option<GroupDiagramSpec>,
    /// Per subgroup key, one matrix per element of pi at that level.
    #[serde(default)]
    pub phi: BTreeMap<String, Vec<Vec<Vec<i64>>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianDiagramSpec {
    pub groups: BTreeMap<String, AbelianGroupSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianGroupSpec {
    pub generators: usize,
    /// Relation columns, each of length `generators`.
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDiagramSpec {
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathsSpec {
    pub base_vertex: String,
    pub paths: BTreeMap<String, Vec<PathStepSpec>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathStepSpec {
    pub edge: String,
    #[serde(default = "forward")]
    pub dir: String,
}

fn forward() -> String {
    "+".to_string()
}

pub struct CompiledBundle {
    pub gset: GSimplicialSet,
    pub oc: OrbitCategory,
    pub coeffs: CoefficientData,
    pub kappa: TwistingCocycle,
    pub paths: Option<PathSystem>,
    pub degrees: Vec<usize>,
}

pub fn parse(text: &str) -> Result<BundleSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn subgroup_key(elements: &[usize]) -> String {
    elements
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn morphism_key(oc: &OrbitCategory, id: usize) -> String {
    let m = oc.morphism(id);
    format!(
        "{}->{}@{}",
        subgroup_key(oc.subgroup_elements(m.src)),
        subgroup_key(oc.subgroup_elements(m.dst)),
        m.rep
    )
}

/// Resolve a user-supplied morphism key, canonicalizing the coset
/// representative.
fn resolve_morphism_key(oc: &OrbitCategory, key: &str) -> Result<usize> {
    let (rest, rep) = key
        .rsplit_once('@')
        .ok_or_else(|| Error::Validation(format!("morphism key {key:?} lacks '@'")))?;
    let (src, dst) = rest
        .split_once("->")
        .ok_or_else(|| Error::Validation(format!("morphism key {key:?} lacks '->'")))?;
    let parse_side = |s: &str| -> Result<usize> {
        let elements: Vec<usize> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Validation(format!("bad subgroup key {s:?}")))
            })
            .collect::<Result<_>>()?;
        oc.subgroup_id(&elements)
            .ok_or_else(|| Error::Validation(format!("{s:?} is not a subgroup")))
    };
    let src = parse_side(src)?;
    let dst = parse_side(dst)?;
    let g: usize = rep
        .trim()
        .parse()
        .map_err(|_| Error::Validation(format!("bad coset representative in {key:?}")))?;
    if g >= oc.group.order() {
        return Err(Error::Validation(format!(
            "coset representative out of range in {key:?}"
        )));
    }
    oc.morphism_id(src, dst, g).ok_or_else(|| {
        Error::Validation(format!(
            "{key:?} does not name an orbit-category morphism (no subconjugacy)"
        ))
    })
}

pub fn compile(spec: &BundleSpec, max_dim: Option<usize>) -> Result<CompiledBundle> {
    let group = FinGroup::new(spec.group.multiplication.clone())?;

    // Space: resolve names into indexed face tables.
    let mut truncation = spec.space.truncation;
    if let Some(cap) = max_dim {
        truncation = truncation.min(cap);
    }
    if spec.space.simplices.len() != spec.space.truncation + 1 {
        return Err(Error::Validation(format!(
            "space lists {} dimensions but truncation is {}",
            spec.space.simplices.len(),
            spec.space.truncation
        )));
    }
    let names: Vec<Vec<String>> = spec.space.simplices[..=truncation].to_vec();
    let mut index: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (q, level) in names.iter().enumerate() {
        for (i, n) in level.iter().enumerate() {
            if index.insert(n.as_str(), (q, i)).is_some() {
                return Err(Error::Validation(format!("duplicate simplex name {n:?}")));
            }
        }
    }
    let resolve_face = |f: &FaceSpec| -> Result<FormalSimplex> {
        let &(dim, idx) = index
            .get(f.base.as_str())
            .ok_or_else(|| Error::Validation(format!("unknown simplex {:?}", f.base)))?;
        let word = DegeneracyWord::new(f.degeneracies.clone())?;
        Ok(FormalSimplex {
            word,
            base: crate::simplicial::SimplexRef { dim, idx },
        })
    };
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = vec![Vec::new(); truncation + 1];
    for q in 1..=truncation {
        for name in &names[q] {
            let fs = spec
                .space
                .faces
                .get(name)
                .ok_or_else(|| Error::Validation(format!("no face table for {name:?}")))?;
            faces[q].push(fs.iter().map(&resolve_face).collect::<Result<Vec<_>>>()?);
        }
    }
    let space = SimplicialSet::new(truncation, names.clone(), faces)?;

    // Action: identity implicit, everything else total.
    let mut action: Vec<Vec<Vec<usize>>> = (0..group.order())
        .map(|_| (0..=truncation).map(|q| (0..space.count(q)).collect()).collect())
        .collect();
    for (gstr, table) in &spec.space.action {
        let g: usize = gstr
            .parse()
            .map_err(|_| Error::Validation(format!("bad group element {gstr:?}")))?;
        if g >= group.order() {
            return Err(Error::Validation(format!("group element {g} out of range")));
        }
        for (from, to) in table {
            let Some(&(qf, it)) = index.get(from.as_str()) else {
                if spec
                    .space
                    .simplices
                    .iter()
                    .any(|level| level.iter().any(|n| n == from))
                {
                    continue; // truncated away by max_dim
                }
                return Err(Error::Validation(format!("unknown simplex {from:?}")));
            };
            let &(qt, jt) = index
                .get(to.as_str())
                .ok_or_else(|| Error::Validation(format!("unknown simplex {to:?}")))?;
            if qf != qt {
                return Err(Error::Validation(format!(
                    "action of {g} maps {from:?} across dimensions"
                )));
            }
            action[g][qf][it] = jt;
        }
        // Totality check: every simplex must be listed.
        for q in 0..=truncation {
            for n in &names[q] {
                if !table.contains_key(n) {
                    return Err(Error::Validation(format!(
                        "action of element {g} missing simplex {n:?}"
                    )));
                }
            }
        }
    }
    let gset = GSimplicialSet::new(space, group.clone(), action)?;
    let oc = OrbitCategory::new(group.clone());

    // Coefficients by subgroup key.
    let keys: Vec<String> = (0..oc.subgroup_count())
        .map(|h| subgroup_key(oc.subgroup_elements(h)))
        .collect();
    for user_key in spec.coefficients.m0.groups.keys() {
        if !keys.contains(user_key) {
            return Err(Error::Validation(format!(
                "{user_key:?} is not a subgroup; expected one of {keys:?}"
            )));
        }
    }
    let mut m0_groups = Vec::with_capacity(keys.len());
    for key in &keys {
        let gs = spec.coefficients.m0.groups.get(key).ok_or_else(|| {
            Error::Validation(format!("coefficient group missing for subgroup {key:?}"))
        })?;
        for r in &gs.relations {
            if r.len() != gs.generators {
                return Err(Error::Validation(format!(
                    "relation of wrong length for subgroup {key:?}"
                )));
            }
        }
        let cols: Vec<Vec<num_bigint::BigInt>> = gs
            .relations
            .iter()
            .map(|r| r.iter().map(|&v| num_bigint::BigInt::from(v)).collect())
            .collect();
        let pres = IntMatrix::from_columns(gs.generators, &cols);
        m0_groups.push(FGAbelianGroup::from_presentation(pres));
    }
    let mut m0_maps = Vec::with_capacity(oc.morphisms.len());
    {
        let mut resolved: BTreeMap<usize, IntMatrix> = BTreeMap::new();
        for (key, rows) in &spec.coefficients.m0.maps {
            let id = resolve_morphism_key(&oc, key)?;
            resolved.insert(id, IntMatrix::from_i64_rows(rows));
        }
        for (id, m) in oc.morphisms.iter().enumerate() {
            let matrix = match resolved.remove(&id) {
                Some(mat) => mat,
                None if oc.is_identity(id) => {
                    IntMatrix::identity(m0_groups[m.src].generators())
                }
                None => {
                    return Err(Error::Validation(format!(
                        "coefficient map missing for morphism {:?}",
                        morphism_key(&oc, id)
                    )))
                }
            };
            m0_maps.push(AbHom::new(
                m0_groups[m.dst].clone(),
                m0_groups[m.src].clone(),
                matrix,
            )?);
        }
    }
    let m0 = OGAbelianGroup {
        groups: m0_groups,
        maps: m0_maps,
    };

    let pi = match &spec.coefficients.pi {
        None => OGGroup::constant(&oc, FinGroup::trivial()),
        Some(diagram) => {
            let mut groups = Vec::with_capacity(keys.len());
            for key in &keys {
                let gs = diagram.groups.get(key).ok_or_else(|| {
                    Error::Validation(format!("twisting group missing for subgroup {key:?}"))
                })?;
                groups.push(FinGroup::new(gs.multiplication.clone())?);
            }
            let mut resolved: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (key, f) in &diagram.maps {
                let id = resolve_morphism_key(&oc, key)?;
                resolved.insert(id, f.clone());
            }
            let mut maps = Vec::with_capacity(oc.morphisms.len());
            for (id, m) in oc.morphisms.iter().enumerate() {
                let f = match resolved.remove(&id) {
                    Some(f) => f,
                    None if oc.is_identity(id) => (0..groups[m.src].order()).collect(),
                    None => {
                        return Err(Error::Validation(format!(
                            "twisting-group map missing for morphism {:?}",
                            morphism_key(&oc, id)
                        )))
                    }
                };
                maps.push(f);
            }
            OGGroup { groups, maps }
        }
    };

    let mut per_subgroup = Vec::with_capacity(keys.len());
    for (h, key) in keys.iter().enumerate() {
        match spec.coefficients.phi.get(key) {
            None => {
                per_subgroup.push(
                    (0..pi.groups[h].order())
                        .map(|_| AbHom::identity(&m0.groups[h]))
                        .collect(),
                );
            }
            Some(mats) => {
                if mats.len() != pi.groups[h].order() {
                    return Err(Error::Validation(format!(
                        "action at subgroup {key:?} must list one matrix per group element"
                    )));
                }
                let mut acts = Vec::with_capacity(mats.len());
                for rows in mats {
                    acts.push(AbHom::new(
                        m0.groups[h].clone(),
                        m0.groups[h].clone(),
                        IntMatrix::from_i64_rows(rows),
                    )?);
                }
                per_subgroup.push(acts);
            }
        }
    }
    let coeffs = CoefficientData {
        m0,
        pi,
        phi: OGAction { per_subgroup },
    };
    let diagram_issues = coeffs.validate(&oc);
    if !diagram_issues.is_empty() {
        return Err(Error::Validation(diagram_issues.join("; ")));
    }

    // Twisting labels.
    let mut labels = vec![BTreeMap::new(); oc.subgroup_count()];
    for (key, table) in &spec.twisting {
        let elements: Vec<usize> = key
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Validation(format!("bad subgroup key {key:?}")))
            })
            .collect::<Result<_>>()?;
        let h = oc
            .subgroup_id(&elements)
            .ok_or_else(|| Error::Validation(format!("{key:?} is not a subgroup")))?;
        for (name, &value) in table {
            let Some(&(dim, idx)) = index.get(name.as_str()) else {
                if spec
                    .space
                    .simplices
                    .iter()
                    .any(|level| level.iter().any(|n| n == name))
                {
                    continue; // truncated away
                }
                return Err(Error::Validation(format!("unknown simplex {name:?}")));
            };
            if dim != 1 {
                return Err(Error::Validation(format!(
                    "twisting label on {name:?}, which is not an edge"
                )));
            }
            labels[h].insert(idx, value);
        }
    }
    let kappa = TwistingCocycle { labels };
    let twist_report = crate::localsys::validate_twisting(&gset, &oc, &coeffs.pi, &kappa);
    if !twist_report.is_valid() {
        return Err(Error::Validation(twist_report.violations.join("; ")));
    }

    // Paths.
    let paths = match &spec.paths {
        None => None,
        Some(p) => {
            let &(bd, bi) = index
                .get(p.base_vertex.as_str())
                .ok_or_else(|| Error::Validation(format!("unknown vertex {:?}", p.base_vertex)))?;
            if bd != 0 {
                return Err(Error::Validation(format!(
                    "base {:?} is not a vertex",
                    p.base_vertex
                )));
            }
            let mut resolved = BTreeMap::new();
            for (vname, steps) in &p.paths {
                let &(vd, vi) = index
                    .get(vname.as_str())
                    .ok_or_else(|| Error::Validation(format!("unknown vertex {vname:?}")))?;
                if vd != 0 {
                    return Err(Error::Validation(format!("{vname:?} is not a vertex")));
                }
                let mut out = Vec::with_capacity(steps.len());
                for s in steps {
                    let &(ed, ei) = index
                        .get(s.edge.as_str())
                        .ok_or_else(|| Error::Validation(format!("unknown edge {:?}", s.edge)))?;
                    if ed != 1 {
                        return Err(Error::Validation(format!("{:?} is not an edge", s.edge)));
                    }
                    let forward = match s.dir.as_str() {
                        "+" | "fwd" | "forward" => true,
                        "-" | "bwd" | "backward" => false,
                        other => {
                            return Err(Error::Validation(format!(
                                "bad path direction {other:?} (use + or -)"
                            )))
                        }
                    };
                    out.push(PathStep { edge: ei, forward });
                }
                resolved.insert(vi, out);
            }
            let system = PathSystem {
                base_vertex: bi,
                paths: resolved,
            };
            let issues = system.validate(&gset);
            if !issues.is_empty() {
                return Err(Error::Validation(issues.join("; ")));
            }
            Some(system)
        }
    };

    let degrees = spec
        .degrees
        .clone()
        .unwrap_or_else(|| (0..truncation).collect());

    log::info!(
        "bundle compiled: |G|={}, {} subgroups, {} orbit morphisms, cells per dimension {:?}",
        oc.group.order(),
        oc.subgroup_count(),
        oc.morphisms.len(),
        gset.space.counts()
    );

    Ok(CompiledBundle {
        gset,
        oc,
        coeffs,
        kappa,
        paths,
        degrees,
    })
}

/// A cochain given by values at orbit-representative simplices, by name.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainSpec {
    pub degree: usize,
    #[serde(default)]
    pub values: BTreeMap<String, Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyInputSpec {
    pub f0: CochainSpec,
    pub f1: CochainSpec,
    #[serde(default)]
    pub h: Option<CochainSpec>,
}
