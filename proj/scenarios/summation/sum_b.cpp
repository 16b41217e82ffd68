template<typename T>
T sum(T* x, int n)
{
  T s = 0;
  for (int i=0; i < n; ++i)
    s += x[i];
  return s;
}
