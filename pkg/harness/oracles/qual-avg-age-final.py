def water_age_stat(en):
    res = en.getComputedQualityTimeSeries()
    row = res.NodeQuality[-1]
    return sum(row) / len(row)

result = water_age_stat(en)
