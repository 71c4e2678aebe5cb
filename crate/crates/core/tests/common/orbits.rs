//! Brute-force cusp count: orbits of `<H, -I>` on primitive vectors, with
//! every group element applied to every vector.

use jbound_core::sl2::SubgroupImage;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn cusp_count(h: &SubgroupImage) -> u64 {
    let n = h.level().get() as u64;
    let mut elements: Vec<[u64; 4]> = h
        .elements()
        .map(|m| m.entries().map(|x| x as u64))
        .collect();
    let negated: Vec<[u64; 4]> = elements.iter().map(|e| e.map(|x| (n - x) % n)).collect();
    elements.extend(negated);

    let idx = |a: u64, c: u64| (a * n + c) as usize;
    let mut parent: Vec<usize> = (0..(n * n) as usize).collect();
    let mut primitive = Vec::new();
    for a in 0..n {
        for c in 0..n {
            if gcd(gcd(a, c), n) == 1 {
                primitive.push((a, c));
            }
        }
    }
    for &(a, c) in &primitive {
        for [ea, eb, ec, ed] in &elements {
            let x = (ea * a + eb * c) % n;
            let y = (ec * a + ed * c) % n;
            let (r1, r2) = (find(&mut parent, idx(a, c)), find(&mut parent, idx(x, y)));
            if r1 != r2 {
                parent[r1] = r2;
            }
        }
    }
    let mut roots: Vec<usize> = primitive
        .iter()
        .map(|&(a, c)| find(&mut parent, idx(a, c)))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len() as u64
}
