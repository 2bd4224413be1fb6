//! Lower bounds for the exploded family `T_{n,k}` against the published grid.

use monsky_core::complex::make_exploded;
use monsky_core::degree::{degree_lower_bound, Strategy};

use crate::CliError;

/// Published lower bounds, row `k` starting at `n = 2k - 1` (`n = 0` for
/// `k = 0`).
const EXPECTED: [&[u64]; 5] =
    [&[1, 1, 2, 3, 4, 5, 6, 7], &[2, 3, 5, 7, 9, 11, 13], &[8, 12, 16, 20, 24], &[28, 36, 44], &[80]];

/// Cells known to be the exact degree.
fn is_sharp(n: usize, k: usize) -> bool {
    k == 0 || (k == 1 && n <= 2)
}

pub fn expected(n: usize, k: usize) -> Option<u64> {
    let first = if k == 0 { 0 } else { 2 * k - 1 };
    EXPECTED.get(k)?.get(n.checked_sub(first)?).copied()
}

pub fn run(n_max: usize, k_max: usize, budget: Option<u64>) -> Result<u8, CliError> {
    let mut strategy = Strategy::exhaustive().with_trick(true);
    if let Some(b) = budget {
        strategy = strategy.with_node_budget(b);
    }
    let width = 7;
    let mut header = format!("{:>4}", "k\\n");
    for n in 0..=n_max {
        header.push_str(&format!("{n:>width$}"));
    }
    println!("{header}");
    let mut failed = false;
    for k in 0..=k_max {
        let mut row = format!("{k:>4}");
        for n in 0..=n_max {
            if 2 * k > n + 1 {
                row.push_str(&format!("{:>width$}", ""));
                continue;
            }
            let r = degree_lower_bound(&make_exploded(n, k)?, &strategy)?;
            let mut cell = if r.complete { r.value.to_string() } else { format!("≥{}?", r.value) };
            match expected(n, k) {
                _ if !r.complete => eprintln!("warning: T_{{{n},{k}}} ran out of budget at {}", r.value),
                Some(e) if r.value < e || (is_sharp(n, k) && r.value != e) => {
                    eprintln!("mismatch: T_{{{n},{k}}} found {} but the table gives {e}", r.value);
                    cell.push('!');
                    failed = true;
                }
                Some(e) if r.value > e => {
                    eprintln!("warning: T_{{{n},{k}}} found {} above the table's {e}", r.value);
                    cell.push('+');
                }
                _ => {}
            }
            // Pad by characters; '≥' is multi-byte.
            row.push_str(&" ".repeat(width.saturating_sub(cell.chars().count())));
            row.push_str(&cell);
        }
        println!("{row}");
    }
    Ok(if failed { 1 } else { 0 })
}
