//! The k-SAT gadget: an NFA whose estimates count through all assignments
//! along Zimin-patterned words.

use crate::error::{Error, Result};
use crate::nfa::{Nfa, NfaBuilder, Word};
use crate::observer::ObservationMap;
use crate::stateset::StateSet;

use super::{CnfFormula, CsoInstance, Family};

pub const MAX_ZIMIN_ORDER: usize = 30;

/// Index of state `x_var^bit` (`var` 1-based) in [`sat_to_cso`] output.
/// States 0 and 1 are `q_s` and `q_ns`.
pub fn sat_state(var: usize, bit: usize) -> usize {
    2 + 2 * (var - 1) + bit
}

/// Index of the symbol `(a_i, c_j)` (both 1-based) for a formula with `m` clauses.
pub fn sat_symbol(i: usize, j: usize, m: usize) -> usize {
    (i - 1) * m + (j - 1)
}

/// Builds the CSO instance that is opaque iff `phi` is satisfiable.
///
/// States: `q_s`, `q_ns`, then `x<i>_0`, `x<i>_1` for each variable. Symbols:
/// `a<i>.c<j>` for `i ∈ 1..=n+1`, `j ∈ 1..=m`, ordered by `i` then `j`.
/// Initial states are `q_s` and every `x<i>_0`; `q_s` is the only secret.
pub fn sat_to_cso(phi: &CnfFormula) -> Result<CsoInstance> {
    let n = phi.num_vars();
    let m = phi.num_clauses();
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput(
            "the SAT gadget needs at least one variable and one clause".into(),
        ));
    }
    let mut b = NfaBuilder::new();
    let qs = b.add_state("q_s")?;
    let qns = b.add_state("q_ns")?;
    for i in 1..=n {
        b.add_state(&format!("x{i}_0"))?;
        b.add_state(&format!("x{i}_1"))?;
    }
    let mut symbol_pairs = Vec::with_capacity((n + 1) * m);
    for i in 1..=n + 1 {
        for j in 1..=m {
            b.add_symbol(&format!("a{i}.c{j}"))?;
            symbol_pairs.push((i, j));
        }
    }
    let sym = |i: usize, j: usize| sat_symbol(i, j, m);

    for s in 0..(n + 1) * m {
        b.add_transition(qs, s, qs);
        b.add_transition(qns, s, qns);
    }
    for i in 1..=n {
        let x0 = sat_state(i, 0);
        let x1 = sat_state(i, 1);
        let neg: Vec<usize> = phi.clauses_containing(-(i as i32));
        let pos: Vec<usize> = phi.clauses_containing(i as i32);
        for c in 1..=m {
            // x_i^0
            b.add_transition(x0, sym(i, c), x1);
            for j in 1..i {
                b.add_transition(x0, sym(j, c), x0);
                b.add_transition(x0, sym(i, c), sat_state(j, 0));
            }
            for j in i + 1..=n + 1 {
                b.add_transition(x0, sym(j, c), qns);
            }
            // x_i^1
            b.add_transition(x1, sym(i, c), qns);
            for j in 1..i {
                b.add_transition(x1, sym(j, c), x1);
            }
        }
        for j in 1..=n + 1 {
            for &c in &neg {
                b.add_transition(x0, sym(j, c + 1), qns);
            }
            for &c in &pos {
                b.add_transition(x1, sym(j, c + 1), qns);
            }
        }
    }
    b.add_initial(qs);
    for i in 1..=n {
        b.add_initial(sat_state(i, 0));
    }
    let nfa = b.build()?;
    let secret = nfa.set_of([qs]);
    let nonsecret = nfa.all_states().difference(&secret);
    let omap = ObservationMap::all_observable(&nfa);
    Ok(CsoInstance {
        nfa,
        secret,
        nonsecret,
        omap,
        family: Family::Sat {
            num_vars: n,
            num_clauses: m,
            symbol_pairs,
        },
    })
}

/// `t(ℓ) + 1`, where `t(ℓ)` is the number of trailing zeros of `ℓ ≥ 1`.
pub fn zimin_index(position: u64) -> usize {
    position.trailing_zeros() as usize + 1
}

/// The `a`-index pattern of the Zimin word `Z_n`, of length `2^n − 1`.
pub fn zimin_indices(n: usize) -> Result<Vec<usize>> {
    if n == 0 || n > MAX_ZIMIN_ORDER {
        return Err(Error::InvalidInput(format!(
            "Zimin order must be in 1..={MAX_ZIMIN_ORDER}, got {n}"
        )));
    }
    Ok((1..1u64 << n).map(zimin_index).collect())
}

/// The word `w_φ · (a_{n+1}, c)` driving [`sat_to_cso`]'s automaton to `{q_s}`,
/// or `None` when `phi` is satisfiable.
///
/// Step `ℓ` reads `a_{t(ℓ+1)+1}` paired with the lowest-index clause falsified
/// by the assignment `ℓ` currently encoded; the last step pairs `a_{n+1}` with
/// the lowest clause falsified by the all-ones assignment.
pub fn canonical_violating_word(phi: &CnfFormula) -> Result<Option<Word>> {
    let n = phi.num_vars();
    let m = phi.num_clauses();
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput(
            "the SAT gadget needs at least one variable and one clause".into(),
        ));
    }
    if n > MAX_ZIMIN_ORDER {
        return Err(Error::CapExceeded(format!("{n} variables")));
    }
    let last = (1u64 << n) - 1;
    let mut word = Word::empty();
    let mut assignment = vec![false; n];
    for value in 0..=last {
        for (i, slot) in assignment.iter_mut().enumerate() {
            *slot = value >> i & 1 == 1;
        }
        let Some(clause) = phi.first_unsatisfied(&assignment) else {
            return Ok(None);
        };
        let a = if value == last {
            n + 1
        } else {
            zimin_index(value + 1)
        };
        word.push(sat_symbol(a, clause + 1, m));
    }
    Ok(Some(word))
}

/// The automaton of [`sat_to_cso`] restricted to the `x` states.
pub fn counter_fragment(inst: &CsoInstance) -> Result<Nfa> {
    let Family::Sat { num_vars, .. } = inst.family else {
        return Err(Error::Shape("not a SAT-gadget instance".into()));
    };
    let nfa = &inst.nfa;
    let mut b = NfaBuilder::new();
    for q in 2..2 + 2 * num_vars {
        b.add_state(nfa.state_name(q))?;
    }
    for name in nfa.symbols().names() {
        b.add_symbol(name)?;
    }
    for (p, a, q) in nfa.transitions() {
        if p >= 2 && q >= 2 {
            b.add_transition(p - 2, a, q - 2);
        }
    }
    for q in nfa.initial().iter().filter(|&q| q >= 2) {
        b.add_initial(q - 2);
    }
    b.build()
}

/// Reads an `x`-state configuration as a counter value: `Some(ℓ)` iff for
/// every variable exactly one of `x_i^0`, `x_i^1` is present, with `x_i^1`
/// contributing bit `i − 1`. `offset` is the index of `x_1^0`.
pub fn counter_value(config: &StateSet, num_vars: usize, offset: usize) -> Option<u64> {
    let mut value = 0u64;
    for i in 0..num_vars {
        let zero = config.contains(offset + 2 * i);
        let one = config.contains(offset + 2 * i + 1);
        match (zero, one) {
            (true, false) => {}
            (false, true) => value |= 1 << i,
            _ => return None,
        }
    }
    Some(value)
}
