def pressure_stat(en):
    res = en.getComputedHydraulicTimeSeries()
    return max(max(row) for row in res.Pressure)

result = pressure_stat(en)
