int sum_int(int* x, int n)
{
  return sum<int>(x, n);
}
