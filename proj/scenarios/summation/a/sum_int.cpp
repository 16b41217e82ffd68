// Component (a) only handles doubles: duplicated and edited for int.
int sum(int* x, int n)
{
  int s = 0;
  for (int i=0; i < n; ++i)
    s += x[i];
  return s;
}
