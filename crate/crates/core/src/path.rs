//! Semifield-generic matrices and Viterbi-style dynamic programming.
//!
//! Matrices over a completed semifield form a semimodule; the product can
//! be taken with either dotting of the operations. For idempotent
//! semifields the conjugate `(A*)_{ij} = (A_{ji})⁻¹` satisfies a family of
//! alternating-product identities mixing both dottings, checked here on
//! concrete instances by [`check_alternating_identities`].
//!
//! Decoding a hidden-state sequence is semifield-relative: the same
//! trellis recursion is optimal in any semifield with idempotent
//! addition, whether scores are max-times probabilities or min-plus
//! costs. [`viterbi_decode`] runs the recursion over a caller-chosen
//! field; [`path_sum`] is the non-idempotent aggregation (the forward
//! algorithm in the probability semifield).

use thiserror::Error;

use crate::semifield::{Builtin, Semifield};
use crate::value::ExtendedReal;

/// Which of the pair's operation families a product uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dotting {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathError {
    #[error("dimension mismatch: {lhs_rows}x{lhs_cols} incompatible with {rhs_rows}x{rhs_cols}")]
    DimensionMismatch {
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("matrices live in different semifields ({lhs} vs {rhs})")]
    FieldMismatch { lhs: String, rhs: String },
    #[error("entry ({row}, {col}) = {value} lies outside the carrier")]
    EntryOutsideCarrier { row: usize, col: usize, value: f64 },
    #[error("operation requires square matrices of the same size")]
    NotSquare,
    #[error("semifield `{0}` does not have idempotent addition")]
    NonIdempotentField(String),
    #[error("observation sequence is empty")]
    EmptyObservations,
    #[error("symbol {symbol} out of range for alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: usize, alphabet: usize },
    #[error("model shapes are inconsistent: {0}")]
    BadModel(String),
    #[error("row {row} of the transition matrix sums to {sum}, expected 1")]
    RowNotNormalized { row: usize, sum: f64 },
}

/// A dense matrix with entries in one semifield.
#[derive(Debug, Clone)]
pub struct SemiMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExtendedReal>,
    field: Semifield,
}

impl SemiMatrix {
    /// Builds a matrix from row-major data, checking carrier membership.
    pub fn from_rows(field: &Semifield, rows: &[Vec<f64>]) -> Result<SemiMatrix, PathError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(PathError::BadModel("empty or ragged rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !field.carrier().contains(v) {
                    return Err(PathError::EntryOutsideCarrier { row: i, col: j, value: v });
                }
                data.push(ExtendedReal::unchecked(v));
            }
        }
        Ok(SemiMatrix {
            rows: r,
            cols: c,
            data,
            field: field.clone(),
        })
    }

    /// The neutral element of the chosen product: unit diagonal, with the
    /// additive neutral of that dotting off the diagonal (`⊥` for the
    /// lower product, `⊤` for the upper one).
    pub fn identity(field: &Semifield, n: usize, dotting: Dotting) -> SemiMatrix {
        let off = match dotting {
            Dotting::Lower => field.bottom(),
            Dotting::Upper => field.top(),
        };
        let mut data = vec![off; n * n];
        for i in 0..n {
            data[i * n + i] = field.unit();
        }
        SemiMatrix {
            rows: n,
            cols: n,
            data,
            field: field.clone(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Semifield {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> ExtendedReal {
        self.data[i * self.cols + j]
    }

    /// Matrix product `(A ⊗ B)_{ij} = ⊕_k a_{ik} ⊗ b_{kj}` in the chosen
    /// dotting.
    pub fn mul(&self, other: &SemiMatrix, dotting: Dotting) -> Result<SemiMatrix, PathError> {
        if !self.field.compatible(&other.field) {
            return Err(PathError::FieldMismatch {
                lhs: self.field.name().into(),
                rhs: other.field.name().into(),
            });
        }
        if self.cols != other.rows {
            return Err(PathError::DimensionMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let f = &self.field;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = match dotting {
                    Dotting::Lower => f.bottom(),
                    Dotting::Upper => f.top(),
                };
                for k in 0..self.cols {
                    let term = match dotting {
                        Dotting::Lower => f.lower_mul(self.get(i, k), other.get(k, j)),
                        Dotting::Upper => f.upper_mul(self.get(i, k), other.get(k, j)),
                    };
                    acc = match dotting {
                        Dotting::Lower => f.lower_add(acc, term),
                        Dotting::Upper => f.upper_add(acc, term),
                    };
                }
                data.push(acc);
            }
        }
        Ok(SemiMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
            field: self.field.clone(),
        })
    }

    /// The conjugate `(A*)_{ij} = (A_{ji})⁻¹`; an involution.
    pub fn conjugate(&self) -> SemiMatrix {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.field.inverse(self.get(i, j)));
            }
        }
        SemiMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
            field: self.field.clone(),
        }
    }

    /// Exact entrywise equality.
    pub fn eq_exact(&self, other: &SemiMatrix) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }

    /// Entrywise comparison in the field's natural order.
    pub fn natural_le(&self, other: &SemiMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(&a, &b)| self.field.natural_le(a, b))
    }
}

/// Outcome of checking the alternating-product identities of an
/// idempotent semifield on a concrete pair of matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlternatingReport {
    /// All eight three-factor products collapse to `A` or `A*`.
    pub triple_products_collapse: bool,
    /// The four-matrix alternating products shorten to `A* ⊗̄ A`.
    pub four_term_shortens: bool,
    /// Alternating products against an arbitrary `M` shorten to `A* ⊗̄ M`.
    pub with_arbitrary_matrix: bool,
    /// `A* ⊗̄ (A ⊗̲ M) ≥ M` and `A* ⊗̲ (A ⊗̄ M) ≤ M` in the natural order.
    pub sandwich_inequalities: bool,
}

impl AlternatingReport {
    pub fn all_hold(&self) -> bool {
        self.triple_products_collapse
            && self.four_term_shortens
            && self.with_arbitrary_matrix
            && self.sandwich_inequalities
    }
}

/// Verifies the conjugate identities on square `a` and `m` over an
/// idempotent semifield.
pub fn check_alternating_identities(
    a: &SemiMatrix,
    m: &SemiMatrix,
) -> Result<AlternatingReport, PathError> {
    if !a.field.probe_idempotent() {
        return Err(PathError::NonIdempotentField(a.field.name().into()));
    }
    if !a.field.compatible(&m.field) {
        return Err(PathError::FieldMismatch {
            lhs: a.field.name().into(),
            rhs: m.field.name().into(),
        });
    }
    if a.rows != a.cols || m.rows != m.cols || a.rows != m.rows {
        return Err(PathError::NotSquare);
    }
    let conj = a.conjugate();
    let lower = |x: &SemiMatrix, y: &SemiMatrix| x.mul(y, Dotting::Lower).expect("shapes agree");
    let upper = |x: &SemiMatrix, y: &SemiMatrix| x.mul(y, Dotting::Upper).expect("shapes agree");

    let triple_products_collapse = [
        lower(a, &upper(&conj, a)),
        upper(a, &lower(&conj, a)),
        lower(&upper(a, &conj), a),
        upper(&lower(a, &conj), a),
    ]
    .iter()
    .all(|p| p.eq_exact(a))
        && [
            lower(&conj, &upper(a, &conj)),
            upper(&conj, &lower(a, &conj)),
            lower(&upper(&conj, a), &conj),
            upper(&lower(&conj, a), &conj),
        ]
        .iter()
        .all(|p| p.eq_exact(&conj));

    let ca = upper(&conj, a);
    let four_term_shortens =
        upper(&conj, &lower(a, &ca)).eq_exact(&ca) && lower(&ca, &ca).eq_exact(&ca);

    let cm = upper(&conj, m);
    let with_arbitrary_matrix =
        upper(&conj, &lower(a, &cm)).eq_exact(&cm) && lower(&ca, &cm).eq_exact(&cm);

    let sandwich_inequalities =
        m.natural_le(&upper(&conj, &lower(a, m))) && lower(&conj, &upper(a, m)).natural_le(m);

    Ok(AlternatingReport {
        triple_products_collapse,
        four_term_shortens,
        with_arbitrary_matrix,
        sandwich_inequalities,
    })
}

/// A sequence model: initial state weights, state transition weights and
/// per-state symbol emission weights, all interpreted in whichever
/// semifield a decode runs over.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceModel {
    initial: Vec<f64>,
    transition: Vec<Vec<f64>>,
    /// `emission[state][symbol]`
    emission: Vec<Vec<f64>>,
}

impl SequenceModel {
    pub fn new(
        initial: Vec<f64>,
        transition: Vec<Vec<f64>>,
        emission: Vec<Vec<f64>>,
    ) -> Result<SequenceModel, PathError> {
        let m = initial.len();
        if m == 0 {
            return Err(PathError::BadModel("no states".into()));
        }
        if transition.len() != m || transition.iter().any(|row| row.len() != m) {
            return Err(PathError::BadModel(format!(
                "transition matrix must be {m}x{m}"
            )));
        }
        if emission.len() != m {
            return Err(PathError::BadModel(format!("emission must have {m} rows")));
        }
        let k = emission[0].len();
        if k == 0 || emission.iter().any(|row| row.len() != k) {
            return Err(PathError::BadModel("empty or ragged emission rows".into()));
        }
        Ok(SequenceModel {
            initial,
            transition,
            emission,
        })
    }

    pub fn states(&self) -> usize {
        self.initial.len()
    }

    pub fn alphabet(&self) -> usize {
        self.emission[0].len()
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    pub fn transition(&self) -> &[Vec<f64>] {
        &self.transition
    }

    pub fn emission(&self) -> &[Vec<f64>] {
        &self.emission
    }

    /// Checks every weight against the field's carrier. In the
    /// probability semifield the initial vector and each transition row
    /// must additionally sum to one (within `1e-9`); no other field
    /// constrains the weights.
    pub fn validate_for(&self, field: &Semifield) -> Result<(), PathError> {
        let all = self
            .initial
            .iter()
            .chain(self.transition.iter().flatten())
            .chain(self.emission.iter().flatten());
        for &v in all {
            if !field.carrier().contains(v) {
                return Err(PathError::EntryOutsideCarrier { row: 0, col: 0, value: v });
            }
        }
        if field.as_builtin() == Some(Builtin::NonNegativeReals) {
            let sum: f64 = self.initial.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(PathError::RowNotNormalized { row: 0, sum });
            }
            for (row, t) in self.transition.iter().enumerate() {
                let sum: f64 = t.iter().sum();
                if (sum - 1.0).abs() > 1e-9 {
                    return Err(PathError::RowNotNormalized { row, sum });
                }
            }
        }
        Ok(())
    }

    fn check_observations(&self, observations: &[usize]) -> Result<(), PathError> {
        if observations.is_empty() {
            return Err(PathError::EmptyObservations);
        }
        let k = self.alphabet();
        if let Some(&symbol) = observations.iter().find(|&&s| s >= k) {
            return Err(PathError::SymbolOutOfRange { symbol, alphabet: k });
        }
        Ok(())
    }
}

/// Result of a decode: the optimal state sequence and its aggregate
/// weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub path: Vec<usize>,
    pub score: ExtendedReal,
}

/// Optimal-path decoding over any semifield with idempotent addition.
///
/// Returns the state sequence whose `⊗̲`-aggregated weight is greatest in
/// the field's natural order, which is also the `⊕̲`-aggregation over all
/// paths. Among equally scored paths the lexicographically smallest state
/// sequence wins (each trellis cell keeps the lexicographically least of
/// its optimal prefixes, so the guarantee is strict whenever no weight on
/// an optimal path is the field's bottom).
pub fn viterbi_decode(
    model: &SequenceModel,
    observations: &[usize],
    field: &Semifield,
) -> Result<Decoded, PathError> {
    if !field.probe_idempotent() {
        return Err(PathError::NonIdempotentField(field.name().into()));
    }
    model.validate_for(field)?;
    model.check_observations(observations)?;

    let m = model.states();
    let init = |s: usize| ExtendedReal::unchecked(model.initial[s]);
    let trans = |a: usize, b: usize| ExtendedReal::unchecked(model.transition[a][b]);
    let emit = |s: usize, o: usize| ExtendedReal::unchecked(model.emission[s][o]);

    let mut score: Vec<ExtendedReal> = (0..m)
        .map(|s| field.lower_mul(init(s), emit(s, observations[0])))
        .collect();
    let mut prefix: Vec<Vec<usize>> = (0..m).map(|s| vec![s]).collect();

    for &obs in &observations[1..] {
        let mut next_score = Vec::with_capacity(m);
        let mut next_prefix = Vec::with_capacity(m);
        for s in 0..m {
            let mut best: Option<(ExtendedReal, usize)> = None;
            for prev in 0..m {
                let cand = field.lower_mul(field.lower_mul(score[prev], trans(prev, s)), emit(s, obs));
                best = Some(match best {
                    None => (cand, prev),
                    Some((bs, bp)) => {
                        if cand == bs {
                            // score tie: keep the lexicographically
                            // smaller prefix
                            if prefix[prev] < prefix[bp] {
                                (cand, prev)
                            } else {
                                (bs, bp)
                            }
                        } else if field.natural_le(bs, cand) {
                            (cand, prev)
                        } else {
                            (bs, bp)
                        }
                    }
                });
            }
            let (s_score, s_prev) = best.expect("at least one state");
            let mut p = prefix[s_prev].clone();
            p.push(s);
            next_score.push(s_score);
            next_prefix.push(p);
        }
        score = next_score;
        prefix = next_prefix;
    }

    let mut best = 0usize;
    for s in 1..m {
        if score[s] == score[best] {
            if prefix[s] < prefix[best] {
                best = s;
            }
        } else if field.natural_le(score[best], score[s]) {
            best = s;
        }
    }
    Ok(Decoded {
        path: prefix.swap_remove(best),
        score: score[best],
    })
}

/// `⊕̲`-aggregation of all path weights (the forward recursion). In the
/// probability semifield this is the total sequence probability; in an
/// idempotent field it coincides with the Viterbi score.
pub fn path_sum(
    model: &SequenceModel,
    observations: &[usize],
    field: &Semifield,
) -> Result<ExtendedReal, PathError> {
    model.validate_for(field)?;
    model.check_observations(observations)?;

    let m = model.states();
    let mut alpha: Vec<ExtendedReal> = (0..m)
        .map(|s| {
            field.lower_mul(
                ExtendedReal::unchecked(model.initial[s]),
                ExtendedReal::unchecked(model.emission[s][observations[0]]),
            )
        })
        .collect();
    for &obs in &observations[1..] {
        alpha = (0..m)
            .map(|s| {
                let mut acc = field.bottom();
                for prev in 0..m {
                    let t = field.lower_mul(
                        alpha[prev],
                        ExtendedReal::unchecked(model.transition[prev][s]),
                    );
                    acc = field.lower_add(acc, t);
                }
                field.lower_mul(acc, ExtendedReal::unchecked(model.emission[s][obs]))
            })
            .collect();
    }
    let mut total = field.bottom();
    for v in alpha {
        total = field.lower_add(total, v);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::close;

    const NEG: f64 = f64::NEG_INFINITY;

    fn maxplus() -> Semifield {
        Semifield::builtin(Builtin::MaxPlus)
    }

    fn maxtimes() -> Semifield {
        Semifield::builtin(Builtin::MaxTimes)
    }

    #[test]
    fn identity_is_neutral_for_the_lower_product() {
        let f = maxplus();
        let a = SemiMatrix::from_rows(&f, &[vec![0.0, 1.5], vec![NEG, 2.0]]).unwrap();
        let id = SemiMatrix::identity(&f, 2, Dotting::Lower);
        assert!(a.mul(&id, Dotting::Lower).unwrap().eq_exact(&a));
        assert!(id.mul(&a, Dotting::Lower).unwrap().eq_exact(&a));
        let idu = SemiMatrix::identity(&f, 2, Dotting::Upper);
        assert!(a.mul(&idu, Dotting::Upper).unwrap().eq_exact(&a));
    }

    #[test]
    fn max_plus_product_by_hand() {
        let f = maxplus();
        let a = SemiMatrix::from_rows(&f, &[vec![0.0, NEG], vec![1.0, 0.0]]).unwrap();
        let b = SemiMatrix::from_rows(&f, &[vec![0.0, 2.0], vec![NEG, 0.0]]).unwrap();
        let c = a.mul(&b, Dotting::Lower).unwrap();
        let expect = SemiMatrix::from_rows(&f, &[vec![0.0, 2.0], vec![1.0, 3.0]]).unwrap();
        assert!(c.eq_exact(&expect));
    }

    #[test]
    fn ordinary_product_on_finite_probabilities() {
        let f = Semifield::builtin(Builtin::NonNegativeReals);
        let a = SemiMatrix::from_rows(&f, &[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = SemiMatrix::from_rows(&f, &[vec![5.0, 6.0], vec![7.0, 8.0]]).unwrap();
        let c = a.mul(&b, Dotting::Lower).unwrap();
        assert!(close(c.get(0, 0).get(), 19.0, 1e-12));
        assert!(close(c.get(1, 1).get(), 50.0, 1e-12));
    }

    #[test]
    fn conjugate_negates_and_transposes_in_max_plus() {
        let f = maxplus();
        let a = SemiMatrix::from_rows(&f, &[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        let c = a.conjugate();
        let expect = SemiMatrix::from_rows(&f, &[vec![0.0, -2.0], vec![-1.0, 0.0]]).unwrap();
        assert!(c.eq_exact(&expect));
        assert!(c.conjugate().eq_exact(&a));
        let id = SemiMatrix::identity(&f, 3, Dotting::Lower);
        // conjugating the identity swaps bottoms for tops
        let cid = id.conjugate();
        assert_eq!(cid.get(0, 1), f.top());
        assert_eq!(cid.get(0, 0), f.unit());
    }

    #[test]
    fn alternating_identities_on_small_instances() {
        let f = maxplus();
        let a = SemiMatrix::from_rows(&f, &[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        let m = SemiMatrix::from_rows(&f, &[vec![1.0, -1.0], vec![0.0, 3.0]]).unwrap();
        let report = check_alternating_identities(&a, &m).unwrap();
        assert!(report.all_hold(), "{report:?}");

        // reduced to M >= M and M <= M when A is the identity
        let id = SemiMatrix::identity(&f, 2, Dotting::Lower);
        let report = check_alternating_identities(&id, &m).unwrap();
        assert!(report.all_hold());

        // min-plus mirror
        let g = Semifield::builtin(Builtin::MinPlus);
        let a = SemiMatrix::from_rows(&g, &[vec![0.0, 4.0], vec![1.0, 2.0]]).unwrap();
        let m = SemiMatrix::from_rows(&g, &[vec![1.0, 0.0], vec![5.0, 2.0]]).unwrap();
        assert!(check_alternating_identities(&a, &m).unwrap().all_hold());
    }

    #[test]
    fn alternating_identities_reject_non_idempotent_fields() {
        let f = Semifield::builtin(Builtin::NonNegativeReals);
        let a = SemiMatrix::from_rows(&f, &[vec![1.0]]).unwrap();
        assert!(matches!(
            check_alternating_identities(&a, &a),
            Err(PathError::NonIdempotentField(_))
        ));
    }

    #[test]
    fn field_and_shape_mismatches_are_rejected() {
        let f = maxplus();
        let g = Semifield::builtin(Builtin::MinPlus);
        let a = SemiMatrix::from_rows(&f, &[vec![0.0]]).unwrap();
        let b = SemiMatrix::from_rows(&g, &[vec![0.0]]).unwrap();
        assert!(matches!(
            a.mul(&b, Dotting::Lower),
            Err(PathError::FieldMismatch { .. })
        ));
        let c = SemiMatrix::from_rows(&f, &[vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            c.mul(&c, Dotting::Lower),
            Err(PathError::DimensionMismatch { .. })
        ));
        assert!(SemiMatrix::from_rows(&maxtimes(), &[vec![-1.0]]).is_err());
    }

    fn two_state_model() -> SequenceModel {
        SequenceModel::new(
            vec![0.6, 0.4],
            vec![vec![0.7, 0.3], vec![0.4, 0.6]],
            vec![vec![0.9, 0.1], vec![0.2, 0.8]],
        )
        .unwrap()
    }

    #[test]
    fn single_observation_picks_the_best_initial_state() {
        let d = viterbi_decode(&two_state_model(), &[1], &maxtimes()).unwrap();
        // 0.6*0.1 = 0.06 vs 0.4*0.8 = 0.32
        assert_eq!(d.path, vec![1]);
        assert!(close(d.score.get(), 0.32, 1e-12));
    }

    #[test]
    fn decode_matches_exhaustive_enumeration() {
        let model = two_state_model();
        let obs = [0, 1, 0];
        let f = maxtimes();
        let d = viterbi_decode(&model, &obs, &f).unwrap();
        // enumerate all 8 paths with the same association order
        let mut best: Option<(f64, Vec<usize>)> = None;
        for p0 in 0..2usize {
            for p1 in 0..2usize {
                for p2 in 0..2usize {
                    let w = model.initial[p0] * model.emission[p0][obs[0]]
                        * model.transition[p0][p1]
                        * model.emission[p1][obs[1]]
                        * model.transition[p1][p2]
                        * model.emission[p2][obs[2]];
                    if best.as_ref().is_none_or(|(bw, _)| w > *bw) {
                        best = Some((w, vec![p0, p1, p2]));
                    }
                }
            }
        }
        let (bw, bp) = best.unwrap();
        assert_eq!(d.path, bp);
        assert_eq!(d.score.get(), bw);
    }

    #[test]
    fn negative_log_weights_give_the_same_path() {
        let model = two_state_model();
        let obs = [0, 1, 1, 0];
        let in_prob = viterbi_decode(&model, &obs, &maxtimes()).unwrap();
        let log_model = SequenceModel::new(
            model.initial.iter().map(|p| -p.log2()).collect(),
            model
                .transition
                .iter()
                .map(|r| r.iter().map(|p| -p.log2()).collect())
                .collect(),
            model
                .emission
                .iter()
                .map(|r| r.iter().map(|p| -p.log2()).collect())
                .collect(),
        )
        .unwrap();
        let in_cost = viterbi_decode(&log_model, &obs, &Semifield::builtin(Builtin::MinPlus)).unwrap();
        assert_eq!(in_prob.path, in_cost.path);
    }

    #[test]
    fn decode_requires_idempotent_addition() {
        let err = viterbi_decode(
            &two_state_model(),
            &[0],
            &Semifield::builtin(Builtin::NonNegativeReals),
        )
        .unwrap_err();
        assert!(matches!(err, PathError::NonIdempotentField(_)));
        let err = viterbi_decode(&two_state_model(), &[], &maxtimes()).unwrap_err();
        assert_eq!(err, PathError::EmptyObservations);
        let err = viterbi_decode(&two_state_model(), &[7], &maxtimes()).unwrap_err();
        assert!(matches!(err, PathError::SymbolOutOfRange { .. }));
    }

    #[test]
    fn path_sum_is_total_probability() {
        let model = two_state_model();
        let obs = [0, 1];
        let f = Semifield::builtin(Builtin::NonNegativeReals);
        let total = path_sum(&model, &obs, &f).unwrap().get();
        let mut brute = 0.0;
        for p0 in 0..2usize {
            for p1 in 0..2usize {
                brute += model.initial[p0]
                    * model.emission[p0][obs[0]]
                    * model.transition[p0][p1]
                    * model.emission[p1][obs[1]];
            }
        }
        assert!(close(total, brute, 1e-12));
        // idempotent aggregation collapses to the decode score
        let v = viterbi_decode(&model, &obs, &maxtimes()).unwrap();
        let s = path_sum(&model, &obs, &maxtimes()).unwrap();
        assert_eq!(v.score, s);
        // and the probability sum dominates the max-times score
        assert!(total >= s.get());
    }

    #[test]
    fn probability_semifield_enforces_row_normalization() {
        let model = SequenceModel::new(
            vec![0.5, 0.5],
            vec![vec![0.9, 0.3], vec![0.5, 0.5]],
            vec![vec![1.0], vec![1.0]],
        )
        .unwrap();
        let err = path_sum(&model, &[0], &Semifield::builtin(Builtin::NonNegativeReals)).unwrap_err();
        assert!(matches!(err, PathError::RowNotNormalized { row: 0, .. }));
        // no such constraint elsewhere
        assert!(viterbi_decode(&model, &[0], &maxtimes()).is_ok());
    }

    #[test]
    fn deterministic_model_yields_its_single_path() {
        let model = SequenceModel::new(
            vec![1.0, 0.0],
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            vec![vec![1.0], vec![1.0]],
        )
        .unwrap();
        let f = maxtimes();
        let d = viterbi_decode(&model, &[0, 0, 0], &f).unwrap();
        assert_eq!(d.path, vec![0, 1, 0]);
        assert!(close(d.score.get(), 1.0, 1e-12));
        assert_eq!(path_sum(&model, &[0, 0, 0], &f).unwrap().get(), 1.0);
    }
}
