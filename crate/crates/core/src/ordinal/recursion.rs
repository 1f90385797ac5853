//! Recursion along the stages below omega.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("requested {requested} recursion stages but fuel is {fuel}")]
pub struct RecursionError {
    pub requested: usize,
    pub fuel: usize,
}

/// Returns `[g(0), ..., g(n)]` where `g(0) = init` and
/// `g(i + 1) = step(i, g(i))`.
pub fn recurse_omega<T, F>(
    init: T,
    n: usize,
    fuel: usize,
    mut step: F,
) -> Result<Vec<T>, RecursionError>
where
    T: Clone,
    F: FnMut(usize, &T) -> T,
{
    if n > fuel {
        return Err(RecursionError { requested: n, fuel });
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(init);
    for i in 0..n {
        let next = step(i, &out[i]);
        out.push(next);
    }
    Ok(out)
}

/// `n_{i+1} = n_i + (i + 1)`, producing 0, 1, 3, 6, 10, ...
pub fn triangular_step(i: usize, prev: &u64) -> u64 {
    prev + i as u64 + 1
}

/// `(i+1)! = i! * (i + 1)`, producing 1, 1, 2, 6, 24, ...
pub fn factorial_step(i: usize, prev: &u64) -> u64 {
    prev * (i as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_numbers() {
        assert_eq!(
            recurse_omega(0, 4, 100, triangular_step).unwrap(),
            vec![0, 1, 3, 6, 10]
        );
    }

    #[test]
    fn factorials() {
        // direct iteration: 0! = 1, then multiply by 1, 2, 3, 4
        let mut expected = vec![1u64];
        for k in 1..=4u64 {
            expected.push(expected.last().unwrap() * k);
        }
        assert_eq!(recurse_omega(1, 4, 100, factorial_step).unwrap(), expected);
        assert_eq!(expected, vec![1, 1, 2, 6, 24]);
    }

    #[test]
    fn constant_step() {
        let out = recurse_omega("x", 6, 100, |_, prev| *prev).unwrap();
        assert_eq!(out, vec!["x"; 7]);
    }

    #[test]
    fn zero_stages_and_fuel() {
        assert_eq!(recurse_omega(5, 0, 0, triangular_step).unwrap(), vec![5]);
        assert_eq!(
            recurse_omega(0, 11, 10, triangular_step),
            Err(RecursionError {
                requested: 11,
                fuel: 10
            })
        );
    }
}
