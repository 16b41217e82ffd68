template<typename T, typename Iter>
T sum(Iter x, int n)
{
  T s = 0;
  for (; x.hasNext(); ++x)
    s += *x;
  return s;
}
