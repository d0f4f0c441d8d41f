def pressure_stat(en):
    en.setLinkDiameter(en.getLinkIndex("12"), 300)
    res = en.getComputedHydraulicTimeSeries()
    return max(max(row) for row in res.Pressure)

result = pressure_stat(en)
