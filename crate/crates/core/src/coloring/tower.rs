use super::CliqueColoring;
use crate::error::{Error, Result};
use crate::expansion::TowerTrace;

/// Colors a tower level by level.
///
/// * `H_0`: its first vertex `x_0` gets color 1, the rest color 2.
/// * level 1: in each petal the first vertex non-adjacent to `x_0` gets 1,
///   the others 3.
/// * level 2: in each petal `(C, X)`, `x` is the first neighbor in `X` of
///   the color-1 vertex of `C` (or the first vertex of `X` if `C` has none);
///   `x` gets 3 if all its neighbors in `C` have color 2 and 2 otherwise;
///   the rest of `X` gets 1.
/// * level `l ≥ 3`: `x` is the first vertex of `X`; it gets 2 if all its
///   neighbors in `C` have color 1 and 1 otherwise; the rest gets `l + 1`.
///
/// "First" means smallest label, which for tower-generated labels is the
/// smallest index. The result is not checked here: at small parameters it
/// need not be a clique-coloring.
pub fn construct_tower_coloring(trace: &TowerTrace) -> Result<CliqueColoring> {
    let g = trace.final_graph();
    let first_by_label = |vs: &mut dyn Iterator<Item = usize>| -> Option<usize> {
        vs.min_by(|&a, &b| g.label(a).cmp(g.label(b)))
    };
    let mut colors = vec![0u32; g.order()];
    let h0 = trace.h0_order();
    let x0 = first_by_label(&mut (0..h0)).expect("H_0 is non-empty");
    for (v, c) in colors.iter_mut().enumerate().take(h0) {
        *c = if v == x0 { 1 } else { 2 };
    }
    for (li, petals) in trace.petals.iter().enumerate() {
        let level = li + 1;
        for p in petals {
            let xs = &p.petal_vertices;
            let c_color = |x: usize| -> Vec<u32> {
                p.attachment
                    .iter()
                    .filter(|&&c| g.adjacent(c, x))
                    .map(|&c| colors[c])
                    .collect()
            };
            let (x, x_color, rest) = match level {
                1 => {
                    let x = first_by_label(&mut xs.iter().copied().filter(|&x| !g.adjacent(x, x0)))
                        .ok_or_else(|| {
                            Error::Construction(format!(
                                "level-1 petal at {:?} (bijection {}) has every vertex adjacent to x_0 = {}",
                                g.labels_of(&p.attachment),
                                p.bijection_index,
                                g.label(x0)
                            ))
                        })?;
                    (x, 1, 3)
                }
                2 => {
                    let ones = first_by_label(
                        &mut p.attachment.iter().copied().filter(|&c| colors[c] == 1),
                    );
                    let x = ones
                        .and_then(|c| first_by_label(&mut xs.iter().copied().filter(|&x| g.adjacent(c, x))))
                        .or_else(|| first_by_label(&mut xs.iter().copied()))
                        .unwrap();
                    let all_two = c_color(x).iter().all(|&c| c == 2);
                    (x, if all_two { 3 } else { 2 }, 1)
                }
                _ => {
                    let x = first_by_label(&mut xs.iter().copied()).unwrap();
                    let all_one = c_color(x).iter().all(|&c| c == 1);
                    (x, if all_one { 2 } else { 1 }, level as u32 + 1)
                }
            };
            for &y in xs {
                colors[y] = if y == x { x_color } else { rest };
            }
        }
    }
    CliqueColoring::new(colors)
}
