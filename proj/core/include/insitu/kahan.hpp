#pragma once

namespace insitu {

// Neumaier-compensated accumulator. The moment recurrences sum ~n terms of
// mixed magnitude per row; the carry term keeps the convolution sums at
// working precision even when individual terms dwarf the running error.
template <class Real>
class KahanSum {
  public:
    KahanSum() = default;
    explicit KahanSum(Real init) : sum_(init) {}

    void add(Real x)
    {
        const Real t = sum_ + x;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }

    KahanSum& operator+=(Real x)
    {
        add(x);
        return *this;
    }

    Real get() const { return sum_ + carry_; }

  private:
    Real sum_ = 0;
    Real carry_ = 0;
};

} // namespace insitu
