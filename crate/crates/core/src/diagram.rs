//! ASCII pictures: Young diagrams, the `gl(n)` block matrix, the block grid of
//! `n_a` and the complement components.

use std::fmt::Write;

use crate::error::Result;
use crate::hwv;
use crate::liealg::{BlockStructure, TangentModel};
use crate::partitions::{GridVariant, Partition};

fn young_section(out: &mut String, title: &str, p: &Partition, variant: GridVariant) {
    let shown = match variant {
        GridVariant::Plain => p.clone(),
        GridVariant::Dual => p.dual(),
        GridVariant::Conjugate => p.conjugate(),
    };
    let parts: Vec<String> = shown.parts().iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "{title} = ({})", parts.join(","));
    for row in p.young_grid(variant) {
        let line: String = row.iter().map(|&b| if b { '#' } else { '.' }).collect();
        let _ = writeln!(out, "{line}");
    }
}

/// The diagram of `a`, its dual and its conjugate, each drawn inside its box.
pub fn young(a: &Partition) -> String {
    let mut out = String::new();
    young_section(&mut out, "a", a, GridVariant::Plain);
    out.push('\n');
    young_section(&mut out, "a*", a, GridVariant::Dual);
    out.push('\n');
    young_section(&mut out, "a'", a, GridVariant::Conjugate);
    out
}

/// `n x n` picture of `gl(n)`: `*` marks `n_a`, `o` marks `m_a`, `d` the Levi blocks.
///
/// The first `m` rows and columns are the `E` side, the rest the `Q` side.
pub fn matrix(a: &Partition) -> Result<String> {
    let b = BlockStructure::of(a)?;
    let amb = a.ambient();
    let (m, n) = (amb.m(), amb.n());
    let e_block = |col: usize| b.e_block_of(col);
    let q_block = |row: usize| b.q_block_of(row);
    let glyph = |row: usize, col: usize| -> char {
        match (row <= m, col <= m) {
            (true, true) => match e_block(row).cmp(&e_block(col)) {
                std::cmp::Ordering::Equal => 'd',
                std::cmp::Ordering::Greater => 'o',
                std::cmp::Ordering::Less => '.',
            },
            (false, false) => match q_block(row - m).cmp(&q_block(col - m)) {
                std::cmp::Ordering::Equal => 'd',
                std::cmp::Ordering::Greater => 'o',
                std::cmp::Ordering::Less => '.',
            },
            (false, true) => {
                if b.in_pi(e_block(col), q_block(row - m)) {
                    '*'
                } else {
                    '.'
                }
            }
            (true, false) => '.',
        }
    };
    let mut out = String::new();
    for row in 1..=n {
        if row == m + 1 {
            let _ = writeln!(out, "{}+{}", "-".repeat(2 * m), "-".repeat(2 * (n - m)));
        }
        let left: Vec<String> = (1..=m).map(|c| glyph(row, c).to_string()).collect();
        let right: Vec<String> = (m + 1..=n).map(|c| glyph(row, c).to_string()).collect();
        let _ = writeln!(out, "{} | {}", left.join(" "), right.join(" "));
    }
    Ok(out)
}

/// Block grid of `E* (x) Q`: one column per `E` block, one row per `Q` block.
pub fn blocks(a: &Partition) -> Result<String> {
    let b = BlockStructure::of(a)?;
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut out = String::new();
    let _ = writeln!(out, "E widths  ({})", join(&b.e_sizes));
    let _ = writeln!(out, "Q heights ({})", join(&b.q_sizes));
    let mut header = String::from("    ");
    for i in 1..=b.r_e() {
        let _ = write!(header, " E{i:<2}");
    }
    let _ = writeln!(out, "{}", header.trim_end());
    for al in 1..=b.r_q() {
        let mut line = format!("Q{al:<3}");
        for i in 1..=b.r_e() {
            let _ = write!(line, " {:<3}", if b.in_pi(i, al) { "*" } else { "." });
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    Ok(out)
}

/// Highest weight vectors of the complement of `m_a` in `Hom(n_a, m/n_a)`.
pub fn hwv(a: &Partition) -> Result<String> {
    let model = TangentModel::new(a)?;
    let comps = hwv::complement_components(&model)?;
    let mut out = String::new();
    let _ = writeln!(out, "Hom(n_a, m/n_a): dim {}; m_a: dim {}", model.hom_dim(), model.ma_image()?.dim());
    for c in &comps {
        let kind = match c.kind {
            hwv::ComponentKind::Type1 => "type1",
            hwv::ComponentKind::Type2 => "type2",
            hwv::ComponentKind::Type3 => "type3",
        };
        let terms: Vec<String> = c.terms.iter().map(|(s, t)| format!("{s}->{t}")).collect();
        let _ = writeln!(
            out,
            "{kind} ({},{}) -> ({},{})  dim {:>3}  {}",
            c.source.0,
            c.source.1,
            c.target.0,
            c.target.1,
            c.predicted_dim,
            terms.join(" + ")
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn young_rows() {
        let text = young(&p("gr(5,11):6,6,4,2,2"));
        assert!(text.contains("a = (6,6,4,2,2)\n######\n######\n####..\n##....\n##....\n"));
        assert!(text.contains("a* = (4,4,2,0,0)\n####..\n####..\n##....\n......\n......\n"));
        assert!(text.contains("a' = (5,5,3,3,2,2)\n#####\n#####\n###..\n###..\n##...\n##...\n"));
    }

    #[test]
    fn matrix_counts() {
        let text = matrix(&p("gr(4,10):6,4,2,2")).unwrap();
        let count = |ch| text.chars().filter(|&c| c == ch).count();
        // n_a has dim 10, m_a 17, Levi 1+1+4 + 3*4
        assert_eq!((count('*'), count('o'), count('d')), (10, 17, 18));
    }

    #[test]
    fn blocks_example() {
        let text = blocks(&p("gr(10,19):9,9,7,7,3,3,3,3,0,0")).unwrap();
        assert!(text.starts_with("E widths  (2,2,4,2)\nQ heights (2,4,3)\n"));
    }
}
