//! The odd-degree decomposition at `q = 7, r = 1`, rebuilt from set
//! operations (translates of `J`, images and preimages under `φ_{θ^l}`)
//! and compared with the per-vertex classification in the library.

use erpolar::colorodd::{Layer, OddDecomposition};
use erpolar::ff::{Fe, GaloisField, Sign};

struct Sets {
    d: OddDecomposition,
    q: u64,
    big: usize,
    /// Translate and sign for vertices of `S`, by construction.
    s_label: Vec<Option<(u64, Sign)>>,
}

fn idx(big: usize, (s, t): (Fe, Fe)) -> usize {
    s.0 as usize * big + t.0 as usize
}

fn build() -> Sets {
    let base = GaloisField::new(7).unwrap();
    let d = OddDecomposition::new(&base, 1).unwrap();
    let f = d.field().clone();
    let q = base.order();
    let big = f.order() as usize;
    let r = d.r();
    let t = d.t();
    let tower = d.tower().clone();
    let mut s_label = vec![None; big * big];

    // J: first coordinate in span(1 .. θ^{r-1}), top coordinate of y nonzero
    let mut j = Vec::new();
    for xi in 0..q.pow(r as u32) {
        let mut xc = vec![Fe::ZERO; t];
        for (i, c) in xc.iter_mut().enumerate().take(r) {
            *c = Fe(xi / q.pow(i as u32) % q);
        }
        let x = tower.assemble(&xc);
        for y in f.elements() {
            let top = d.coeff(y, 2 * r);
            if let Some(sign) = base.sign(top) {
                j.push((x, y, sign));
            }
        }
    }
    assert_eq!(j.len() as u64, q.pow(r as u32) * (q - 1) * q.pow(t as u32 - 1));

    // S as a union of translates ψ_k(J), k in span(θ^r .. θ^{2r})
    for ki in 0..q.pow(r as u32 + 1) {
        let mut kc = vec![Fe::ZERO; t];
        for i in 0..=r {
            kc[r + i] = Fe(ki / q.pow(i as u32) % q);
        }
        let k = tower.assemble(&kc);
        for &(x, y, sign) in &j {
            let nx = f.add(x, k);
            let ny = f.add(y, f.add(f.scale(4, f.mul(k, x)), f.scale(2, f.square(k))));
            let v = idx(big, (nx, ny));
            assert!(s_label[v].is_none(), "translates overlap");
            s_label[v] = Some((ki, sign));
        }
    }
    Sets { d, q, big, s_label }
}

#[test]
fn decomposition_matches_set_construction() {
    let Sets { d, q, big, s_label } = build();
    let f = d.field().clone();
    let n = big * big;
    let in_x: Vec<bool> = s_label.iter().map(Option::is_none).collect();
    let vertex = |i: usize| (Fe((i / big) as u64), Fe((i % big) as u64));
    let phi = |l: usize, v: (Fe, Fe)| {
        let th = f.pow(d.theta_pow(1), l as u64);
        (f.mul(th, v.0), f.mul(f.square(th), v.1))
    };
    let phi_inv = |l: usize, v: (Fe, Fe)| {
        let th = f.inv(f.pow(d.theta_pow(1), l as u64)).unwrap();
        (f.mul(th, v.0), f.mul(f.square(th), v.1))
    };

    let mut sizes = vec![0u64; d.t() + 1];
    for i in 0..n {
        let v = vertex(i);
        let lib = d.layer(v);
        // first l whose preimage of S contains v, among vertices of X
        let expect = if !in_x[i] {
            assert_eq!(d.s_label(v), s_label[i], "S label at {i}");
            Layer::S
        } else {
            (1..d.t()).find(|&l| !in_x[idx(big, phi(l, v))]).map_or(Layer::Z, Layer::Pullback)
        };
        assert_eq!(lib, expect, "vertex {i}");
        // the intersection of images gives the same Z
        let z_images = in_x[i] && (1..d.t()).all(|l| in_x[idx(big, phi_inv(l, v))]);
        assert_eq!(z_images, lib == Layer::Z, "vertex {i}");
        match lib {
            Layer::S => sizes[0] += 1,
            Layer::Pullback(l) => sizes[l] += 1,
            Layer::Z => {
                sizes[d.t()] += 1;
                assert_eq!(v.1, f.scale(2, f.square(v.0)), "Z vertex off the loop set");
                assert_eq!(d.expected_t_for_z(v.0), v.1);
            }
        }
    }
    assert_eq!(sizes, vec![100842, 14406, 2058, 343]);
    assert_eq!(sizes[0], 2 * q.pow(2) * (q - 1) * q.pow(3) / 2);
}

#[test]
fn fixed_blocks_are_proper_by_direct_adjacency() {
    let Sets { d, big, .. } = build();
    let f = d.field().clone();
    let colors: Vec<Option<u32>> =
        (0..big * big).map(|i| d.color_of((Fe((i / big) as u64), Fe((i % big) as u64)))).collect();
    let mut edges = 0u64;
    for u in 0..big * big {
        let Some(cu) = colors[u] else { continue };
        let (x1, x2) = (Fe((u / big) as u64), Fe((u % big) as u64));
        for y1 in f.elements() {
            // (x1 + y1)² = x2 + y2
            let y2 = f.sub(f.square(f.add(x1, y1)), x2);
            let v = idx(big, (y1, y2));
            if v == u {
                continue;
            }
            if let Some(cv) = colors[v] {
                assert_ne!(cu, cv, "edge {u}-{v}");
                edges += 1;
            }
        }
    }
    assert!(edges > 0);
}
