use serde::Serialize;

/// Which identity a [`PiconePointEval`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Power,
    NonlinearPrinted,
    NonlinearRederived,
    DunningerP2,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Power => "power",
            Variant::NonlinearPrinted => "nonlinear_printed",
            Variant::NonlinearRederived => "nonlinear_rederived",
            Variant::DunningerP2 => "dunninger_p2",
        }
    }
}

/// One pointwise evaluation of both sides of an identity `L = R`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiconePointEval {
    pub point: Vec<f64>,
    #[serde(rename = "L")]
    pub lhs: f64,
    #[serde(rename = "R")]
    pub rhs: f64,
    pub residual: f64,
    #[serde(rename = "term_I")]
    pub term_i: f64,
    #[serde(rename = "term_II")]
    pub term_ii: f64,
    #[serde(rename = "term_III")]
    pub term_iii: f64,
    pub admissible: bool,
    pub variant: Variant,
}

pub const CSV_HEADER: &str = "point,L,R,residual,term_I,term_II,term_III,admissible,variant";

impl PiconePointEval {
    pub(crate) fn new(
        point: &[f64],
        terms: [f64; 3],
        rhs: f64,
        admissible: bool,
        variant: Variant,
    ) -> Self {
        let lhs = terms[0] + terms[1] + terms[2];
        PiconePointEval {
            point: point.to_vec(),
            lhs,
            rhs,
            residual: lhs - rhs,
            term_i: terms[0],
            term_ii: terms[1],
            term_iii: terms[2],
            admissible,
            variant,
        }
    }

    /// `max(|L|, |R|, 1)`, the reference magnitude for all tolerances.
    pub fn scale(&self) -> f64 {
        self.lhs.abs().max(self.rhs.abs()).max(1.0)
    }

    /// `|L - R| / scale`.
    pub fn normalized_residual(&self) -> f64 {
        self.residual.abs() / self.scale()
    }

    /// Flat CSV row matching [`CSV_HEADER`]; the point's coordinates are
    /// space-separated inside the `point` column.
    pub fn to_csv_row(&self) -> String {
        let point: Vec<String> = self.point.iter().map(|c| c.to_string()).collect();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            point.join(" "),
            self.lhs,
            self.rhs,
            self.residual,
            self.term_i,
            self.term_ii,
            self.term_iii,
            self.admissible,
            self.variant.as_str()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serializes_with_exact_field_names() {
        let e = PiconePointEval::new(&[0.25, 0.5], [1.0, 0.5, 0.25], 1.75, true, Variant::Power);
        let json = serde_json::to_value(&e).unwrap();
        let keys: Vec<&str> = json
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        let mut expected: Vec<&str> = CSV_HEADER.split(',').collect();
        let mut keys_sorted = keys.clone();
        keys_sorted.sort();
        expected.sort();
        assert_eq!(keys_sorted, expected);
        assert_eq!(json["variant"], "power");
        assert_eq!(e.to_csv_row(), "0.25 0.5,1.75,1.75,0,1,0.5,0.25,true,power");
        assert_eq!(e.scale(), 1.75);
    }
}
