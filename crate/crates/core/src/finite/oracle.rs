use serde::Serialize;

use super::{check_axioms, derived_operation, enumerate_structures, AxiomReport, FiniteError, FiniteRack, OpTable};
use crate::classify::Theory;
use crate::term::Word;

/// Largest enumerated size scanned by [`search_counterexample`].
pub const MAX_ORACLE_ENUM_SIZE: usize = 4;

/// A structure of the theory whose derived operation breaks the theory's axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub structure: FiniteRack,
    pub derived: OpTable,
    pub report: AxiomReport,
}

impl Serialize for Counterexample {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Counterexample", 4)?;
        st.serialize_field("structure", &self.structure.label())?;
        st.serialize_field("table", self.structure.table())?;
        st.serialize_field("derived", &self.derived)?;
        st.serialize_field("report", &self.report)?;
        st.end()
    }
}

/// Scans `library` (restricted to structures of `theory`) and then every
/// enumerated structure of `theory` up to `max_enum_size` elements, returning
/// the first one on which `w` fails to define a structure of the same theory.
pub fn search_counterexample(
    w: &Word,
    theory: Theory,
    library: &[FiniteRack],
    max_enum_size: usize,
) -> Result<Option<Counterexample>, FiniteError> {
    if max_enum_size > MAX_ORACLE_ENUM_SIZE {
        return Err(FiniteError::SizeLimitExceeded {
            requested: max_enum_size,
            max: MAX_ORACLE_ENUM_SIZE,
        });
    }
    let in_theory = |r: &FiniteRack| theory == Theory::Rack || r.is_quandle();
    for rack in library.iter().filter(|r| in_theory(r)) {
        if let Some(found) = refute_on(w, theory, rack)? {
            return Ok(Some(found));
        }
    }
    for n in 1..=max_enum_size {
        for rack in enumerate_structures(theory, n, true)? {
            if let Some(found) = refute_on(w, theory, &rack)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

fn refute_on(w: &Word, theory: Theory, rack: &FiniteRack) -> Result<Option<Counterexample>, FiniteError> {
    let derived = derived_operation(rack, w)?;
    let report = check_axioms(&derived);
    Ok((!report.satisfies(theory)).then(|| Counterexample {
        structure: rack.clone(),
        derived,
        report,
    }))
}

#[cfg(test)]
mod tests {
    use super::super::{conjugation_quandle, dihedral, symmetric_group_3, Witness};
    use super::*;
    use crate::term::parse;

    #[test]
    fn y_over_x_refuted_on_s3() {
        let s3 = conjugation_quandle(&symmetric_group_3()).unwrap().into_rack().with_name("conjugation(S3)");
        let mut library = vec![s3];
        library.extend((3..=7).map(|n| dihedral(n).into()));
        let found = search_counterexample(&parse("y |> x").unwrap(), Theory::Quandle, &library, 0)
            .unwrap()
            .unwrap();
        assert_eq!(found.structure.label(), "conjugation(S3)");
        assert!(found.report.witness.unwrap().holds_on(&found.derived));
    }

    #[test]
    fn odd_dihedrals_do_not_refute_y_over_x() {
        let w = parse("y |> x").unwrap();
        for n in [1, 3, 5, 7] {
            let lib = [dihedral(n).into()];
            assert_eq!(search_counterexample(&w, Theory::Quandle, &lib, 0).unwrap(), None, "n = {n}");
        }
        // b ↦ 2b − a is not injective mod an even modulus
        for n in [2, 4, 6] {
            let lib = [dihedral(n).into()];
            let found = search_counterexample(&w, Theory::Quandle, &lib, 0).unwrap().unwrap();
            assert_eq!(found.report.witness, Some(Witness::RowNotBijective { row: 0 }));
        }
    }

    #[test]
    fn power_operation_has_no_counterexample() {
        let library: Vec<FiniteRack> = super::super::default_library();
        assert_eq!(
            search_counterexample(&parse("x |> y").unwrap(), Theory::Quandle, &library, 3).unwrap(),
            None
        );
    }

    #[test]
    fn first_projection_refuted() {
        let lib = [dihedral(2).into()];
        let found = search_counterexample(&parse("x").unwrap(), Theory::Quandle, &lib, 0)
            .unwrap()
            .unwrap();
        assert_eq!(found.report.witness, Some(Witness::RowNotBijective { row: 0 }));
    }

    #[test]
    fn enum_size_guard() {
        assert!(search_counterexample(&parse("x").unwrap(), Theory::Rack, &[], 5).is_err());
    }
}
