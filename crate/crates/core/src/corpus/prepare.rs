//! Train/test splitting with information-level deduplication, and the
//! balanced informative/empty training subset.

use rand::seq::index;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::GoldExample;
use crate::error::{Error, Result};
use crate::records;

type InfoKey = Vec<[String; 4]>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainTestSplit {
    pub train: Vec<GoldExample>,
    pub test: Vec<GoldExample>,
    /// `round(test_fraction * n)`; the test set is smaller only when the
    /// dedup constraint forced it.
    pub requested_test: usize,
}

impl TrainTestSplit {
    pub fn shortfall(&self) -> usize {
        self.requested_test - self.test.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedSubset {
    pub examples: Vec<GoldExample>,
    /// How many more empty examples would have been needed for an even split.
    pub shortfall: usize,
}

/// `small ⊆ big` as multisets; both inputs sorted.
pub(crate) fn multiset_contains(big: &[[String; 4]], small: &[[String; 4]]) -> bool {
    let mut it = big.iter();
    'outer: for s in small {
        for b in it.by_ref() {
            match b.cmp(s) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Information content of an example; `None` when it carries no records.
fn info_key(ex: &GoldExample) -> Result<Option<InfoKey>> {
    let recs = records::parse(&ex.target_text).map_err(|e| {
        Error::InvalidArgument(format!(
            "gold example `{}` has an invalid target: {e}",
            ex.id
        ))
    })?;
    Ok(if recs.is_empty() {
        None
    } else {
        Some(records::information_content(&recs))
    })
}

/// Seeded, non-stratified test draw of `round(test_fraction * n)` examples
/// such that no informative test example's record multiset equals or is
/// contained in a training example's record multiset. Examples sharing
/// identical information move to the test side together. Both outputs keep
/// input order.
pub fn split_train_test(
    gold: &[GoldExample],
    test_fraction: f64,
    seed: u64,
) -> Result<TrainTestSplit> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "test fraction must lie in (0, 1), got {test_fraction}"
        )));
    }
    if gold.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot split an empty gold set".into(),
        ));
    }
    let requested = (test_fraction * gold.len() as f64).round() as usize;
    let info: Vec<Option<InfoKey>> = gold.iter().map(info_key).collect::<Result<_>>()?;

    let mut order: Vec<usize> = (0..gold.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    // Candidate units in draw order: informative examples with identical
    // content form one unit, empty examples stand alone.
    let mut units: Vec<Vec<usize>> = Vec::new();
    let mut unit_of_key: std::collections::HashMap<&InfoKey, usize> = Default::default();
    for &i in &order {
        match &info[i] {
            None => units.push(vec![i]),
            Some(key) => match unit_of_key.get(key) {
                Some(&u) => units[u].push(i),
                None => {
                    unit_of_key.insert(key, units.len());
                    units.push(vec![i]);
                }
            },
        }
    }

    let mut in_test = vec![false; gold.len()];
    let mut taken = vec![false; units.len()];
    let mut test_size = 0;
    loop {
        let mut progressed = false;
        for (u, members) in units.iter().enumerate() {
            if test_size == requested {
                break;
            }
            if taken[u] || test_size + members.len() > requested {
                continue;
            }
            if admissible(members, &info, &in_test) {
                for &i in members {
                    in_test[i] = true;
                }
                taken[u] = true;
                test_size += members.len();
                progressed = true;
            }
        }
        if test_size == requested || !progressed {
            break;
        }
    }

    if requested > 0 && test_size == 0 {
        return Err(Error::DedupUnsatisfiable(format!(
            "every candidate shares its information with a training example ({} examples, {} requested)",
            gold.len(),
            requested
        )));
    }
    if test_size < requested {
        log::warn!(
            "dedup constraint shrank the test split from {requested} to {test_size} examples"
        );
    }

    let (test, train): (Vec<_>, Vec<_>) = gold.iter().zip(&in_test).partition(|(_, &t)| t);
    Ok(TrainTestSplit {
        train: train.into_iter().map(|(ex, _)| ex.clone()).collect(),
        test: test.into_iter().map(|(ex, _)| ex.clone()).collect(),
        requested_test: requested,
    })
}

/// A unit may move to test when no example left on the training side (other
/// than the unit itself) contains its information.
fn admissible(members: &[usize], info: &[Option<InfoKey>], in_test: &[bool]) -> bool {
    let Some(key) = &info[members[0]] else {
        return true;
    };
    info.iter().enumerate().all(|(j, other)| {
        if in_test[j] || members.contains(&j) {
            return true;
        }
        match other {
            Some(other) => !multiset_contains(other, key),
            None => true,
        }
    })
}

/// Every informative example plus an equally sized seeded sample of empty
/// ones, in input order.
pub fn balanced_subset(train: &[GoldExample], seed: u64) -> Result<BalancedSubset> {
    let (informative, empty): (Vec<usize>, Vec<usize>) =
        (0..train.len()).partition(|&i| train[i].is_informative());
    if informative.is_empty() {
        return Err(Error::NoInformativeExamples);
    }
    let wanted = informative.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let drawn: Vec<usize> = if empty.len() <= wanted {
        empty.clone()
    } else {
        index::sample(&mut rng, empty.len(), wanted)
            .into_iter()
            .map(|k| empty[k])
            .collect()
    };
    let shortfall = wanted - drawn.len();
    if shortfall > 0 {
        log::warn!(
            "only {} empty examples available to balance {wanted} informative ones",
            drawn.len()
        );
    }
    let mut keep = vec![false; train.len()];
    for &i in informative.iter().chain(&drawn) {
        keep[i] = true;
    }
    Ok(BalancedSubset {
        examples: train
            .iter()
            .zip(keep)
            .filter(|&(_, k)| k)
            .map(|(ex, _)| ex.clone())
            .collect(),
        shortfall,
    })
}
