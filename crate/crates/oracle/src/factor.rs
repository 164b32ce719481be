//! Single-column factors used to materialize interventions.

use graph_core::VertexId;
use kernel_algebra::TabularDist;

use crate::error::OracleError;

/// A one-column table putting all mass on `level`: substituting it for a
/// vertex's conditional table forces `do(v = level)`.
pub fn point_mass(
    v: &VertexId,
    card: usize,
    level: usize,
) -> Result<TabularDist, OracleError> {
    if level >= card {
        return Err(OracleError::LevelOutOfRange {
            v: v.clone(),
            level,
            card,
        });
    }
    let mut probs = vec![0.0; card];
    probs[level] = 1.0;
    Ok(TabularDist::new(vec![(v.clone(), card)], probs)?)
}

/// A one-column table of ones: substituting it for a vertex's conditional
/// table keeps the vertex as a free column indexing one world per level,
/// i.e. a symbolic intervention.
pub fn ones(v: &VertexId, card: usize) -> Result<TabularDist, OracleError> {
    Ok(TabularDist::new(
        vec![(v.clone(), card)],
        vec![1.0; card],
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_concentrates_on_one_level() {
        let v = VertexId::new("X");
        let t = point_mass(&v, 3, 1).unwrap();
        assert_eq!(t.probs(), &[0.0, 1.0, 0.0]);
        assert!(matches!(
            point_mass(&v, 3, 3),
            Err(OracleError::LevelOutOfRange { level: 3, card: 3, .. })
        ));
    }

    #[test]
    fn ones_is_flat() {
        let v = VertexId::new("X");
        let t = ones(&v, 4).unwrap();
        assert_eq!(t.probs(), &[1.0; 4]);
    }
}
