use crate::approx::{ApproxTable, SetPrefix};

/// Nested c.e. layers `A_1 ⊇ A_2 ⊇ … ⊇ A_n` with
/// `A = (A_1 − A_2) ∪ (A_3 − A_4) ∪ …` (plus `A_n` when `n` is odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    layers: Vec<ApproxTable>,
    universe: usize,
    stages: usize,
}

/// `A_j = {x : column x changes at least j times}`; `x` enters `A_j` at the
/// stage of its `j`-th change.
pub fn decompose_nce(t: &ApproxTable) -> Decomposition {
    let depth = (0..t.universe())
        .map(|x| t.flips(x).len())
        .max()
        .unwrap_or(0);
    let layers = (1..=depth)
        .map(|j| {
            let flips = (0..t.universe())
                .map(|x| t.flips(x).get(j - 1).map(|&c| vec![c]).unwrap_or_default())
                .collect();
            let settled = (0..t.universe()).map(|x| t.settled_by(x)).collect();
            ApproxTable::from_flips(t.stages(), flips, settled)
                .expect("layers of a valid table are valid")
        })
        .collect();
    Decomposition {
        layers,
        universe: t.universe(),
        stages: t.stages(),
    }
}

impl Decomposition {
    pub fn layers(&self) -> &[ApproxTable] {
        &self.layers
    }

    /// Number of layers, the table's level in the Ershov hierarchy.
    pub fn level(&self) -> usize {
        self.layers.len()
    }

    /// `(A_1 − A_2) ∪ … ` evaluated on final layer contents.
    pub fn reassemble(&self) -> SetPrefix {
        self.reassemble_with(|layer, x| layer.final_value(x))
    }

    /// The same union evaluated on the stage-`s` layer snapshots.
    pub fn reassemble_at(&self, s: usize) -> SetPrefix {
        self.reassemble_with(|layer, x| layer.get(x, s))
    }

    fn reassemble_with(&self, member: impl Fn(&ApproxTable, usize) -> bool) -> SetPrefix {
        SetPrefix::from_fn(self.universe, |x| {
            let mut j = 0;
            while j < self.layers.len() {
                let in_odd = member(&self.layers[j], x);
                let in_even = self.layers.get(j + 1).is_some_and(|l| member(l, x));
                if in_odd && !in_even {
                    return true;
                }
                j += 2;
            }
            false
        })
    }

    /// First `(j, x)` whose layer column is not monotone (`j` is 1-based).
    pub fn check_monotone(&self) -> Result<(), (usize, usize)> {
        for (j, layer) in self.layers.iter().enumerate() {
            if let Some(x) = (0..self.universe).find(|&x| layer.flips(x).len() > 1) {
                return Err((j + 1, x));
            }
        }
        Ok(())
    }

    /// First `(j, x, s)` with `x ∈ A_{j+1,s}` but `x ∉ A_{j,s}`.
    pub fn check_nesting(&self) -> Result<(), (usize, usize, usize)> {
        for j in 1..self.layers.len() {
            self.layers[j]
                .stagewise_subset_of(&self.layers[j - 1])
                .map_err(|(x, s)| (j, x, s))?;
        }
        Ok(())
    }

    pub fn stages(&self) -> usize {
        self.stages
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[&str]) -> ApproxTable {
        let rows: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.chars().map(|c| c == '1').collect())
            .collect();
        ApproxTable::from_rows(&rows, vec![None; rows.len()]).unwrap()
    }

    #[test]
    fn even_changes_drop_out() {
        let d = decompose_nce(&table(&["0110"]));
        assert_eq!(d.level(), 2);
        assert!(d.layers()[0].final_value(0));
        assert!(d.layers()[1].final_value(0));
        assert!(!d.reassemble().contains(0));
    }

    #[test]
    fn ce_table_has_one_layer() {
        let t = table(&["0011", "0000", "0111"]);
        let d = decompose_nce(&t);
        assert_eq!(d.level(), 1);
        assert_eq!(d.layers()[0], t);
        assert_eq!(d.reassemble(), t.final_set());
    }

    #[test]
    fn odd_level_keeps_top_layer() {
        let t = table(&["0101000", "0100000", "0101011"]);
        let d = decompose_nce(&t);
        assert_eq!(d.level(), 5);
        assert_eq!(d.reassemble(), t.final_set());
        assert_eq!(d.check_monotone(), Ok(()));
        assert_eq!(d.check_nesting(), Ok(()));
        for s in 0..7 {
            assert_eq!(d.reassemble_at(s), t.snapshot(s));
        }
    }

    #[test]
    fn empty_table() {
        let d = decompose_nce(&table(&["000", "000"]));
        assert_eq!(d.level(), 0);
        assert!(d.reassemble().is_empty());
    }
}
