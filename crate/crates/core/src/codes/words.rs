use std::fmt;

use serde::Serialize;

use crate::numeric::HalfInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    U,
    /// `D` leaving a marked vertex.
    DMark,
    /// `D` leaving an unmarked vertex.
    DPlain,
    /// Petal-type edge.
    E,
}

impl Letter {
    pub fn step(self) -> i64 {
        match self {
            Letter::U => 1,
            Letter::DMark | Letter::DPlain => -1,
            Letter::E => 0,
        }
    }

    pub fn is_down(self) -> bool {
        matches!(self, Letter::DMark | Letter::DPlain)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DressedWord {
    pub letters: Vec<Letter>,
}

impl DressedWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        DressedWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn count(&self, l: Letter) -> usize {
        self.letters.iter().filter(|&&x| x == l).count()
    }

    /// Index of the `D_plain` in the first `U D_plain` factor, if any.
    pub fn forbidden_factor(&self) -> Option<usize> {
        self.letters
            .windows(2)
            .position(|w| w[0] == Letter::U && w[1] == Letter::DPlain)
            .map(|i| i + 1)
    }
}

impl fmt::Display for DressedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                Letter::U => "U",
                Letter::DMark => "D∘",
                Letter::DPlain => "D•",
                Letter::E => "E",
            })?;
        }
        Ok(())
    }
}

/// Word families with their parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordForm {
    /// Starts with `D∘`; `m` U, `k+1` D∘, `m-k-1` D•.
    UdForm1 { m: u32, k: u32 },
    /// Ends with `U`; `m` U, `k` D∘, `m-k` D•.
    UdForm2 { m: u32, k: u32 },
    /// Half-odd `m`; `m-1/2` U, `k` D∘, `m-1/2-k` D•.
    UdForm3 { m: HalfInt, k: u32 },
    /// Length `2m-1` with `s` E, `r` D∘, `m-(s+1+eps)/2` U and `m-r-(s+1-eps)/2` D•.
    Petal {
        m: HalfInt,
        r: u32,
        s: u32,
        eps: i64,
    },
}

/// Letter counts `(U, D∘, D•, E)` for a form, or `None` when some count is not
/// a nonnegative integer.
fn counts(form: WordForm) -> Option<[i64; 4]> {
    let c = match form {
        WordForm::UdForm1 { m, k } => {
            if m == 0 {
                return None;
            }
            let (m, k) = (m as i64, k as i64);
            [m, k + 1, m - k - 1, 0]
        }
        WordForm::UdForm2 { m, k } => {
            if m == 0 {
                return None;
            }
            let (m, k) = (m as i64, k as i64);
            [m, k, m - k, 0]
        }
        WordForm::UdForm3 { m, k } => {
            if !m.is_half_odd() || m.twice() < 0 {
                return None;
            }
            let e = (m.twice() - 1) / 2;
            [e, k as i64, e - k as i64, 0]
        }
        WordForm::Petal { m, r, s, eps } => {
            let t = m.twice();
            let (r, s) = (r as i64, s as i64);
            if t <= 0 || (t - s - 1 - eps) % 2 != 0 {
                return None;
            }
            [(t - s - 1 - eps) / 2, r, (t - 2 * r - s - 1 + eps) / 2, s]
        }
    };
    if c.iter().any(|&x| x < 0) {
        None
    } else {
        Some(c)
    }
}

/// All admissible words of a form, each exactly once, in lexicographic letter order.
pub fn enumerate_words(form: WordForm) -> Vec<DressedWord> {
    let Some(c) = counts(form) else {
        return Vec::new();
    };
    let total: i64 = c.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(total as usize);
    let mut left = c;
    fill(form, &mut left, &mut cur, &mut out);
    out
}

const ORDER: [Letter; 4] = [Letter::U, Letter::DMark, Letter::DPlain, Letter::E];

fn fill(form: WordForm, left: &mut [i64; 4], cur: &mut Vec<Letter>, out: &mut Vec<DressedWord>) {
    if left.iter().all(|&x| x == 0) {
        if let WordForm::UdForm2 { .. } = form {
            if cur.last() != Some(&Letter::U) {
                return;
            }
        }
        out.push(DressedWord::new(cur.clone()));
        return;
    }
    for (i, &l) in ORDER.iter().enumerate() {
        if left[i] == 0 {
            continue;
        }
        if cur.is_empty() && matches!(form, WordForm::UdForm1 { .. }) && l != Letter::DMark {
            continue;
        }
        if l == Letter::DPlain && cur.last() == Some(&Letter::U) {
            continue;
        }
        left[i] -= 1;
        cur.push(l);
        fill(form, left, cur, out);
        cur.pop();
        left[i] += 1;
    }
}
