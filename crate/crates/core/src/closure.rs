/// A subset of `0..size` closed under a binary operation, with the
/// generators that were actually needed to reach it.
#[derive(Debug, Clone)]
pub(crate) struct Closed {
    pub elements: Vec<u32>,
    pub mask: Vec<bool>,
    pub generators: Vec<u32>,
}

/// Smallest subset containing `0` and `seed` closed under right
/// multiplication by the seed elements. For a finite group this is the
/// generated subgroup.
///
/// Seeds already inside the current span are skipped, so the cost is
/// about `|span| * |generators used|` operations.
pub(crate) fn generate<I, F>(size: usize, seed: I, op: F) -> Closed
where
    I: IntoIterator<Item = u32>,
    F: Fn(u32, u32) -> u32,
{
    let mut mask = vec![false; size];
    mask[0] = true;
    let mut elements = vec![0u32];
    let mut generators: Vec<u32> = Vec::new();
    for s in seed {
        if mask[s as usize] {
            continue;
        }
        generators.push(s);
        let old_len = elements.len();
        for i in 0..old_len {
            let y = op(elements[i], s);
            if !mask[y as usize] {
                mask[y as usize] = true;
                elements.push(y);
            }
        }
        let mut i = old_len;
        while i < elements.len() {
            let x = elements[i];
            for &g in &generators {
                let y = op(x, g);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
    }
    elements.sort_unstable();
    Closed {
        elements,
        mask,
        generators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_closure() {
        let c = generate(12, [4], |a, b| (a + b) % 12);
        assert_eq!(c.elements, vec![0, 4, 8]);
        let c = generate(12, [4, 6, 8], |a, b| (a + b) % 12);
        assert_eq!(c.elements, vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(c.generators, vec![4, 6]);
    }
}
