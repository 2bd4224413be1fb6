use serde::{Deserialize, Serialize};

use super::{ComplexError, Triangulation, VertexId};

/// On-disk JSON form of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationFile {
    pub vertices: usize,
    pub corners: Vec<VertexId>,
    pub triangles: Vec<[VertexId; 3]>,
    #[serde(default)]
    pub condition: Vec<VertexId>,
}

impl TriangulationFile {
    pub fn into_triangulation(self) -> Result<Triangulation, ComplexError> {
        Triangulation::validate(self.vertices, self.triangles, self.corners, self.condition)
    }
}

impl From<&Triangulation> for TriangulationFile {
    fn from(t: &Triangulation) -> Self {
        TriangulationFile {
            vertices: t.complex().vertex_count(),
            corners: t.complex().corners().to_vec(),
            triangles: t.complex().raw_triangles(),
            condition: t.condition().members().to_vec(),
        }
    }
}

impl Triangulation {
    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let file: TriangulationFile = serde_json::from_str(text).map_err(|e| ComplexError::Parse(e.to_string()))?;
        file.into_triangulation()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TriangulationFile::from(self)).expect("serializable")
    }
}
