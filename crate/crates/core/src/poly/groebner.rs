//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the
//! normal selection strategy, generic over ideal and module terms.

use super::sparse::{make_monic, sub_scaled, Term, TermOrder, TermVec};
use super::Monomial;
use crate::exact::Rational;

struct Lead<T> {
    term: T,
    mask: u64,
}

impl<T: Term> Lead<T> {
    fn of(p: &TermVec<T>) -> Self {
        let term = p[0].0.clone();
        let mask = term.mon().support_mask();
        Lead { term, mask }
    }

    fn divides(&self, t: &T, t_mask: u64) -> bool {
        self.mask & !t_mask == 0 && self.term.divides(t)
    }
}

/// Full reduction of `f` by a list of monic polynomials.
pub(crate) fn normal_form<T: Term, O: TermOrder<T>>(f: TermVec<T>, basis: &[TermVec<T>], ord: &O) -> TermVec<T> {
    let leads: Vec<Lead<T>> = basis.iter().map(Lead::of).collect();
    let refs: Vec<&TermVec<T>> = basis.iter().collect();
    reduce_with(f, &refs, &leads, ord)
}

fn reduce_with<T: Term, O: TermOrder<T>>(
    mut p: TermVec<T>,
    basis: &[&TermVec<T>],
    leads: &[Lead<T>],
    ord: &O,
) -> TermVec<T> {
    let mut i = 0;
    while i < p.len() {
        let (t, c) = &p[i];
        let mask = t.mon().support_mask();
        match leads.iter().position(|l| l.divides(t, mask)) {
            Some(k) => {
                let q = t.mon().div(leads[k].term.mon()).expect("divisibility checked");
                let c = c.clone();
                let tail = sub_scaled(&p[i..], &c, &q, basis[k], ord);
                p.truncate(i);
                p.extend(tail);
            }
            None => i += 1,
        }
    }
    p
}

struct Pair<T> {
    i: usize,
    j: usize,
    lcm: T,
}

struct Engine<'a, T, O> {
    ord: &'a O,
    polys: Vec<TermVec<T>>,
    leads: Vec<Lead<T>>,
    active: Vec<usize>,
    pairs: Vec<Pair<T>>,
}

impl<'a, T: Term, O: TermOrder<T>> Engine<'a, T, O> {
    fn reduce(&self, f: TermVec<T>) -> TermVec<T> {
        let basis: Vec<&TermVec<T>> = self.active.iter().map(|&k| &self.polys[k]).collect();
        let leads: Vec<Lead<T>> = self
            .active
            .iter()
            .map(|&k| Lead { term: self.leads[k].term.clone(), mask: self.leads[k].mask })
            .collect();
        reduce_with(f, &basis, &leads, self.ord)
    }

    fn spoly(&self, p: &Pair<T>) -> TermVec<T> {
        let (a, b) = (&self.polys[p.i], &self.polys[p.j]);
        let qa = p.lcm.mon().div(a[0].0.mon()).expect("lcm divisible");
        let qb = p.lcm.mon().div(b[0].0.mon()).expect("lcm divisible");
        let one = Rational::one();
        let scaled_a: TermVec<T> = a.iter().map(|(t, c)| (t.mul_mon(&qa), c.clone())).collect();
        sub_scaled(&scaled_a, &one, &qb, b, self.ord)
    }

    fn coprime(&self, a: usize, b: usize) -> bool {
        T::PRODUCT_CRITERION && self.leads[a].term.mon().is_coprime(self.leads[b].term.mon())
    }

    /// Gebauer–Möller update for a new basis element `h`.
    fn insert(&mut self, mut h: TermVec<T>) {
        make_monic(&mut h);
        let hi = self.polys.len();
        self.leads.push(Lead::of(&h));
        self.polys.push(h);
        let ht = self.leads[hi].term.clone();

        let mut cands: Vec<(usize, T)> = self
            .active
            .iter()
            .filter_map(|&g| ht.lcm(&self.leads[g].term).map(|l| (g, l)))
            .collect();

        // Criterion M / F on the new pairs.
        let mut kept: Vec<(usize, T)> = Vec::new();
        while let Some((g1, l1)) = (!cands.is_empty()).then(|| cands.remove(0)) {
            let dominated = |others: &[(usize, T)]| others.iter().any(|(_, l2)| l2.divides(&l1));
            if self.coprime(hi, g1) || (!dominated(&cands) && !dominated(&kept)) {
                kept.push((g1, l1));
            }
        }
        let fresh: Vec<Pair<T>> = kept
            .into_iter()
            .filter(|(g, _)| !self.coprime(hi, *g))
            .map(|(g, l)| Pair { i: g, j: hi, lcm: l })
            .collect();

        // Criterion B on old pairs.
        let leads = &self.leads;
        self.pairs.retain(|p| {
            if !ht.divides(&p.lcm) {
                return true;
            }
            let li = ht.lcm(&leads[p.i].term);
            let lj = ht.lcm(&leads[p.j].term);
            li.as_ref() == Some(&p.lcm) || lj.as_ref() == Some(&p.lcm)
        });
        self.pairs.extend(fresh);

        let leads = &self.leads;
        self.active.retain(|&g| !ht.divides(&leads[g].term));
        self.active.push(hi);
    }

    fn select(&mut self) -> Option<Pair<T>> {
        let ord = self.ord;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            ord.cmp_terms(&pa.lcm, &pb.lcm).then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the span of `gens`, monic and sorted by leading
/// term, largest first.
pub(crate) fn reduced_basis<T: Term, O: TermOrder<T>>(gens: Vec<TermVec<T>>, ord: &O) -> Vec<TermVec<T>> {
    let mut e = Engine { ord, polys: Vec::new(), leads: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in gens {
        let h = e.reduce(g);
        if !h.is_empty() {
            e.insert(h);
        }
    }
    while let Some(p) = e.select() {
        let s = e.spoly(&p);
        let h = e.reduce(s);
        if !h.is_empty() {
            e.insert(h);
        }
    }
    let mut basis: Vec<TermVec<T>> = e.active.iter().map(|&k| e.polys[k].clone()).collect();
    basis.sort_by(|a, b| ord.cmp_terms(&b[0].0, &a[0].0));
    interreduce(basis, ord)
}

/// Tail-reduces a minimal basis so that no term of any element is divisible
/// by another element's leading term.
fn interreduce<T: Term, O: TermOrder<T>>(mut basis: Vec<TermVec<T>>, ord: &O) -> Vec<TermVec<T>> {
    for k in 0..basis.len() {
        let others: Vec<TermVec<T>> =
            basis.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, b)| b.clone()).collect();
        let mut p = std::mem::take(&mut basis[k]);
        let head = p.remove(0);
        let mut tail = normal_form(p, &others, ord);
        tail.insert(0, head);
        make_monic(&mut tail);
        basis[k] = tail;
    }
    basis
}

/// Buchberger's criterion: every S-vector of `basis` reduces to zero.
/// Used as an independent check on computed bases.
pub(crate) fn satisfies_buchberger_criterion<T: Term, O: TermOrder<T>>(basis: &[TermVec<T>], ord: &O) -> bool {
    let monic: Vec<TermVec<T>> = basis
        .iter()
        .map(|b| {
            let mut b = b.clone();
            make_monic(&mut b);
            b
        })
        .collect();
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            let (a, b) = (&monic[i], &monic[j]);
            let Some(l) = a[0].0.lcm(&b[0].0) else { continue };
            let qa: Monomial = l.mon().div(a[0].0.mon()).unwrap();
            let qb: Monomial = l.mon().div(b[0].0.mon()).unwrap();
            let scaled: TermVec<T> = a.iter().map(|(t, c)| (t.mul_mon(&qa), c.clone())).collect();
            let s = sub_scaled(&scaled, &Rational::one(), &qb, b, ord);
            if !normal_form(s, &monic, ord).is_empty() {
                return false;
            }
        }
    }
    true
}
