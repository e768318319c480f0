"""Integer points on the zero fiber for E7 and E8 (two each), keyed by arrow name."""

POINTS = {
    "E7": {
        1: {
            "B*0<-1": [[-8, 0]],
            "B*1<-2": [[0, 1, 0], [-8, 0, 0]],
            "B*2<-3": [[1, 1, 0, 0], [-2, 0, 1, 0], [-4, 0, 0, 0]],
            "B*3<-4": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]],
            "B*3<-7": [[1, 0], [-2, 0], [4, -1], [-4, 0]],
            "B*4<-5": [[1, 0], [0, 1], [0, 0]],
            "B*5<-6": [[1], [0]],
            "B1<-0": [[0], [1]],
            "B2<-1": [[1, 0], [0, 0], [0, 1]],
            "B3<-2": [[2, 0, 0], [-2, 1, 0], [4, 0, 0], [-4, 0, 1]],
            "B4<-3": [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            "B5<-4": [[0, 1, 0], [0, 0, 1]],
            "B6<-5": [[0, 1]],
            "B7<-3": [[2, 1, 0, 0], [4, 0, 0, 1]],
        },
        2: {
            "B*0<-1": [[4, 0]],
            "B*1<-2": [[0, 1, 0], [4, 0, 0]],
            "B*2<-3": [[-2, 1, 0, 0], [-2, 0, 1, 0], [-4, 0, 0, 0]],
            "B*3<-4": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]],
            "B*3<-7": [[-2, 0], [-2, 0], [-2, -1], [-4, 0]],
            "B*4<-5": [[1, 0], [0, 1], [0, 0]],
            "B*5<-6": [[1], [0]],
            "B1<-0": [[0], [1]],
            "B2<-1": [[1, 0], [0, 0], [0, 1]],
            "B3<-2": [[-1, 0, 0], [-2, 1, 0], [-2, 0, 0], [-4, 0, 1]],
            "B4<-3": [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            "B5<-4": [[0, 1, 0], [0, 0, 1]],
            "B6<-5": [[0, 1]],
            "B7<-3": [[-1, 1, 0, 0], [-2, 0, 0, 1]],
        },
    },
    "E8": {
        1: {
            "B*0<-1": [[32, 0]],
            "B*1<-2": [[0, 1, 0], [32, 0, 0]],
            "B*2<-3": [[0, 1, 0, 0], [0, 0, 1, 0], [32, 0, 0, 0]],
            "B*3<-4": [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [32, 0, 0, 0, 0]],
            "B*4<-5": [[1, 1, 0, 0, 0, 0], [-2, 0, 1, 0, 0, 0], [-4, 0, 0, 1, 0, 0], [8, 0, 0, 0, 1, 0], [16, 0, 0, 0, 0, 0]],
            "B*5<-6": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]],
            "B*5<-8": [[1, 0, 0], [-2, 0, 0], [4, 1, 0], [8, 0, 0], [-16, 0, -1], [16, 0, 0]],
            "B*6<-7": [[1, 0], [0, 0], [0, 1], [0, 0]],
            "B1<-0": [[0], [1]],
            "B2<-1": [[1, 0], [0, 0], [0, 1]],
            "B3<-2": [[1, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1]],
            "B4<-3": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1]],
            "B5<-4": [[2, 0, 0, 0, 0], [-2, 1, 0, 0, 0], [4, 0, 1, 0, 0], [8, 0, 0, 1, 0], [-16, 0, 0, 0, 0], [16, 0, 0, 0, 1]],
            "B6<-5": [[0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
            "B7<-6": [[0, 1, 0, 0], [0, 0, 0, 1]],
            "B8<-5": [[2, 1, 0, 0, 0, 0], [-8, 0, 0, 1, 0, 0], [-16, 0, 0, 0, 0, 1]],
        },
        2: {
            "B*0<-1": [[8, 0]],
            "B*1<-2": [[0, 1, 0], [8, 0, 0]],
            "B*2<-3": [[0, 1, 0, 0], [0, 0, 1, 0], [8, 0, 0, 0]],
            "B*3<-4": [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [8, 0, 0, 0, 0]],
            "B*4<-5": [[-2, 1, 0, 0, 0, 0], [-2, 0, 1, 0, 0, 0], [-4, 0, 0, 1, 0, 0], [-4, 0, 0, 0, 1, 0], [-8, 0, 0, 0, 0, 0]],
            "B*5<-6": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]],
            "B*5<-8": [[-2, 0, 0], [-2, 0, 0], [-2, 1, 0], [-4, 0, 0], [-4, 0, -1], [-8, 0, 0]],
            "B*6<-7": [[1, 0], [0, 0], [0, 1], [0, 0]],
            "B1<-0": [[0], [1]],
            "B2<-1": [[1, 0], [0, 0], [0, 1]],
            "B3<-2": [[1, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1]],
            "B4<-3": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1]],
            "B5<-4": [[-1, 0, 0, 0, 0], [-2, 1, 0, 0, 0], [-2, 0, 1, 0, 0], [-4, 0, 0, 1, 0], [-4, 0, 0, 0, 0], [-8, 0, 0, 0, 1]],
            "B6<-5": [[0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
            "B7<-6": [[0, 1, 0, 0], [0, 0, 0, 1]],
            "B8<-5": [[-1, 1, 0, 0, 0, 0], [-2, 0, 0, 1, 0, 0], [-4, 0, 0, 0, 0, 1]],
        },
    },
}
