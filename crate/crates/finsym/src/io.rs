//! Versioned JSON documents: symmetric sets, maps, groups, groupoids,
//! diagrams, and reports. Every document carries a `format` tag that is
//! checked on parse, and serialization is bit-stable: explicit tables,
//! sorted composition triples, pretty-printed with a trailing newline.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::group::{FiniteGroup, FiniteGroupoid, Morphism};
use crate::reflect::ReflectReport;
use crate::spiny::SpinyReport;
use crate::symset::{DiagramData, SymMap, TruncSymSet, ValidationReport};
use crate::{Error, Result};

pub const SYMSET_FORMAT: &str = "symset/v1";
pub const GROUP_FORMAT: &str = "group/v1";
pub const GROUPOID_FORMAT: &str = "groupoid/v1";
pub const SYMMAP_FORMAT: &str = "sym-map/v1";
pub const REPORT_FORMAT: &str = "report/v1";
pub const REFLECT_REPORT_FORMAT: &str = "reflect-report/v1";
pub const DIAGRAM_FORMAT: &str = "diagram/v1";

fn check_format(found: &str, expected: &'static str) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::UnknownFormat { found: found.to_string(), expected })
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(doc)? + "\n")
}

/// A truncated symmetric set as explicit tables. `face[0]`, `swap[0]`,
/// and `degeneracy[trunc]` are empty; `swap[n][k]` is the involution
/// exchanging positions `k` and `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymSetDoc {
    pub format: String,
    pub trunc: usize,
    pub cells: Vec<Vec<String>>,
    pub face: Vec<Vec<Vec<usize>>>,
    pub degeneracy: Vec<Vec<Vec<usize>>>,
    pub swap: Vec<Vec<Vec<usize>>>,
}

impl SymSetDoc {
    pub fn from_symset(x: &TruncSymSet) -> Self {
        SymSetDoc {
            format: SYMSET_FORMAT.to_string(),
            trunc: x.trunc(),
            cells: (0..=x.trunc()).map(|n| x.names(n).to_vec()).collect(),
            face: x.face_tables().to_vec(),
            degeneracy: x.deg_tables().to_vec(),
            swap: x.swap_tables().to_vec(),
        }
    }

    pub fn to_symset(&self) -> Result<TruncSymSet> {
        check_format(&self.format, SYMSET_FORMAT)?;
        if self.cells.len() != self.trunc + 1 {
            return Err(Error::MalformedSymSet(format!(
                "trunc {} does not match {} cell levels",
                self.trunc,
                self.cells.len()
            )));
        }
        TruncSymSet::from_tables(
            self.cells.clone(),
            self.face.clone(),
            self.degeneracy.clone(),
            self.swap.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub format: String,
    pub names: Vec<String>,
    pub unit: usize,
    pub mul: Vec<Vec<usize>>,
}

impl GroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDoc {
            format: GROUP_FORMAT.to_string(),
            names: g.names().to_vec(),
            unit: g.unit(),
            mul: g.mul_table().to_vec(),
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        check_format(&self.format, GROUP_FORMAT)?;
        FiniteGroup::new(self.names.clone(), self.unit, self.mul.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite groupoid with its composition as sorted `[g, f, g_after_f]`
/// triples over the composable pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDoc {
    pub format: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub identities: Vec<usize>,
    pub comp: Vec<[usize; 3]>,
}

impl GroupoidDoc {
    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        GroupoidDoc {
            format: GROUPOID_FORMAT.to_string(),
            objects: g.object_names().to_vec(),
            morphisms: g
                .morphisms()
                .iter()
                .map(|m| MorphismDoc { name: m.name.clone(), src: m.src, tgt: m.tgt })
                .collect(),
            identities: g.identities().to_vec(),
            comp: g.composition_pairs().map(|(a, f, af)| [a, f, af]).collect(),
        }
    }

    pub fn to_groupoid(&self) -> Result<FiniteGroupoid> {
        check_format(&self.format, GROUPOID_FORMAT)?;
        let morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .map(|m| Morphism { name: m.name.clone(), src: m.src, tgt: m.tgt })
            .collect();
        let comp: HashMap<(usize, usize), usize> =
            self.comp.iter().map(|&[g, f, gf]| ((g, f), gf)).collect();
        FiniteGroupoid::new(self.objects.clone(), morphisms, comp, self.identities.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymMapDoc {
    pub format: String,
    pub levels: Vec<Vec<usize>>,
}

impl SymMapDoc {
    pub fn from_map(f: &SymMap) -> Self {
        SymMapDoc { format: SYMMAP_FORMAT.to_string(), levels: f.levels().to_vec() }
    }

    pub fn to_map(&self) -> Result<SymMap> {
        check_format(&self.format, SYMMAP_FORMAT)?;
        if self.levels.is_empty() {
            return Err(Error::InvalidSymMap("at least level 0 is required".into()));
        }
        Ok(SymMap::new(self.levels.clone()))
    }
}

/// A pass/fail report with an optional level and witness strings (the
/// colliding cells of a spininess check, or the cell and identity of a
/// validation failure).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub format: String,
    pub pass: bool,
    pub level: Option<usize>,
    pub witness: Option<Vec<String>>,
}

impl ReportDoc {
    pub fn from_spiny(r: &SpinyReport) -> Self {
        ReportDoc {
            format: REPORT_FORMAT.to_string(),
            pass: r.pass,
            level: r.level,
            witness: r.witness.as_ref().map(|(a, b)| vec![a.clone(), b.clone()]),
        }
    }

    pub fn from_validation(r: &ValidationReport) -> Self {
        ReportDoc {
            format: REPORT_FORMAT.to_string(),
            pass: r.pass,
            level: r.violation.as_ref().map(|v| v.level),
            witness: r.violation.as_ref().map(|v| vec![v.cell.clone(), v.identity.clone()]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectReportDoc {
    pub format: String,
    pub iterations: usize,
    pub merges: Vec<Vec<usize>>,
    pub stabilized: bool,
    pub boundary_merges: bool,
}

impl ReflectReportDoc {
    pub fn from_report(r: &ReflectReport) -> Self {
        ReflectReportDoc {
            format: REFLECT_REPORT_FORMAT.to_string(),
            iterations: r.iterations,
            merges: r.merges.clone(),
            stabilized: r.stabilized,
            boundary_merges: r.boundary_merges,
        }
    }
}

/// The shape of a colimit diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramShape {
    Coproduct,
    Pushout,
    Coequalizer,
}

impl DiagramShape {
    pub fn as_str(&self) -> &'static str {
        match self {
            DiagramShape::Coproduct => "coproduct",
            DiagramShape::Pushout => "pushout",
            DiagramShape::Coequalizer => "coequalizer",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "coproduct" => Ok(DiagramShape::Coproduct),
            "pushout" => Ok(DiagramShape::Pushout),
            "coequalizer" => Ok(DiagramShape::Coequalizer),
            other => Err(Error::Unsupported(format!("unknown diagram shape {other:?}"))),
        }
    }
}

/// A diagram with owned objects and arrows, borrowable as [`DiagramData`].
/// Pushouts list `[apex, left, right]` with arrows `[to_left, to_right]`;
/// coequalizers list `[src, tgt]` with the two parallel arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OwnedDiagram {
    pub shape: DiagramShape,
    pub objects: Vec<TruncSymSet>,
    pub arrows: Vec<SymMap>,
}

impl OwnedDiagram {
    pub fn data(&self) -> Result<DiagramData<'_>> {
        let want = |objs: usize, arrs: usize| -> Result<()> {
            if self.objects.len() != objs || self.arrows.len() != arrs {
                return Err(Error::Unsupported(format!(
                    "a {} diagram takes {objs} objects and {arrs} arrows, found {} and {}",
                    self.shape.as_str(),
                    self.objects.len(),
                    self.arrows.len()
                )));
            }
            Ok(())
        };
        match self.shape {
            DiagramShape::Coproduct => {
                if !self.arrows.is_empty() {
                    return Err(Error::Unsupported("coproduct diagrams take no arrows".into()));
                }
                Ok(DiagramData::Coproduct(self.objects.iter().collect()))
            }
            DiagramShape::Pushout => {
                want(3, 2)?;
                Ok(DiagramData::Pushout {
                    apex: &self.objects[0],
                    left: &self.objects[1],
                    right: &self.objects[2],
                    to_left: &self.arrows[0],
                    to_right: &self.arrows[1],
                })
            }
            DiagramShape::Coequalizer => {
                want(2, 2)?;
                Ok(DiagramData::Coequalizer {
                    src: &self.objects[0],
                    tgt: &self.objects[1],
                    f: &self.arrows[0],
                    g: &self.arrows[1],
                })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub format: String,
    pub shape: String,
    pub objects: Vec<SymSetDoc>,
    pub arrows: Vec<SymMapDoc>,
}

impl DiagramDoc {
    pub fn from_diagram(d: &OwnedDiagram) -> Self {
        DiagramDoc {
            format: DIAGRAM_FORMAT.to_string(),
            shape: d.shape.as_str().to_string(),
            objects: d.objects.iter().map(SymSetDoc::from_symset).collect(),
            arrows: d.arrows.iter().map(SymMapDoc::from_map).collect(),
        }
    }

    pub fn to_diagram(&self) -> Result<OwnedDiagram> {
        check_format(&self.format, DIAGRAM_FORMAT)?;
        let shape = DiagramShape::parse(&self.shape)?;
        let objects: Result<Vec<TruncSymSet>> =
            self.objects.iter().map(|d| d.to_symset()).collect();
        let arrows: Result<Vec<SymMap>> = self.arrows.iter().map(|d| d.to_map()).collect();
        let owned = OwnedDiagram { shape, objects: objects?, arrows: arrows? };
        owned.data()?;
        Ok(owned)
    }
}

pub fn parse_symset(json: &str) -> Result<TruncSymSet> {
    let doc: SymSetDoc = serde_json::from_str(json)?;
    doc.to_symset()
}

pub fn parse_group(json: &str) -> Result<FiniteGroup> {
    let doc: GroupDoc = serde_json::from_str(json)?;
    doc.to_group()
}

pub fn parse_groupoid(json: &str) -> Result<FiniteGroupoid> {
    let doc: GroupoidDoc = serde_json::from_str(json)?;
    doc.to_groupoid()
}

pub fn parse_diagram(json: &str) -> Result<OwnedDiagram> {
    let doc: DiagramDoc = serde_json::from_str(json)?;
    doc.to_diagram()
}
