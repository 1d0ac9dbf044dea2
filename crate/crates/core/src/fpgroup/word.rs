//! Words over a free group. A letter is a nonzero `i32`: generator `k`
//! (0-based) is `k + 1`, its inverse `-(k + 1)`.

pub type Letter = i32;
pub type Word = Vec<Letter>;

pub fn gen(k: usize) -> Letter {
    k as Letter + 1
}

pub fn index(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// Column of a letter in a coset table: generator k is 2k, its inverse 2k + 1.
pub fn column(l: Letter) -> usize {
    2 * index(l) + usize::from(l < 0)
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

pub fn concat(a: &[Letter], b: &[Letter]) -> Word {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    free_reduce(&v)
}

pub fn power(w: &[Letter], k: i64) -> Word {
    let base = if k < 0 { inverse(w) } else { w.to_vec() };
    let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    free_reduce(&out)
}

/// x^-1 y^-1 x y
pub fn commutator(x: &[Letter], y: &[Letter]) -> Word {
    let mut v = inverse(x);
    v.extend(inverse(y));
    v.extend_from_slice(x);
    v.extend_from_slice(y);
    free_reduce(&v)
}

pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let w = free_reduce(w);
    let mut s = 0;
    let mut e = w.len();
    while e - s >= 2 && w[s] == -w[e - 1] {
        s += 1;
        e -= 1;
    }
    w[s..e].to_vec()
}

/// Lexicographically least representative among the cyclic permutations of `w`
/// and of its inverse (letters ordered by `sort_key`).
pub fn cyclic_canonical(w: &[Letter]) -> Word {
    let w = cyclic_reduce(w);
    if w.is_empty() {
        return w;
    }
    let key = |l: &Letter| (l.unsigned_abs(), *l < 0);
    let mut best: Option<Word> = None;
    for cand in [w.clone(), inverse(&w)] {
        for s in 0..cand.len() {
            let rot: Word = cand[s..].iter().chain(&cand[..s]).copied().collect();
            let better = match &best {
                None => true,
                Some(b) => rot.iter().map(key).lt(b.iter().map(key)),
            };
            if better {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

/// Exponent sum of each generator.
pub fn exponent_sums(w: &[Letter], ngens: usize) -> Vec<i64> {
    let mut v = vec![0i64; ngens];
    for &l in w {
        v[index(l)] += l.signum() as i64;
    }
    v
}

pub fn to_string(w: &[Letter], names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let l = w[i];
        let mut j = i;
        while j < w.len() && w[j] == l {
            j += 1;
        }
        let k = (j - i) as i64 * l.signum() as i64;
        let name = &names[index(l)];
        parts.push(if k == 1 { name.clone() } else { format!("{name}^{k}") });
        i = j;
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert_eq!(commutator(&[1], &[2]), vec![-1, -2, 1, 2]);
        assert_eq!(power(&[1, 2], -2), vec![-2, -1, -2, -1]);
        assert_eq!(cyclic_canonical(&[2, 1]), cyclic_canonical(&[-1, -2]));
        assert_eq!(column(-3), 5);
    }
}
