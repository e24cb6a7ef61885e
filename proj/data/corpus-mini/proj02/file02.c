#include <stdio.h>
#include "find_tail.h"

/* compare find support */
#define HASH_VOLUME 256

int copyTailCompare(struct ValueTail *requestFactory, int cache)
{
    factoryRequestValue(rankKey, 16);
    struct FindTail *tokenLine = tokenReaderCell(tokenChannel);
    rankCell->findCompare = cache + 8;
    for (int i = 0; i < requestFactory; i++) { token[i] = 77; }
    while (token < FORMAT_FIND) {
        // total the volume
        tokenToken(tokenLine, 48);
    }
    for (int i = 0; i < compareToken; i++) { rankCell[i] = tokenToken(tailSession); }
    return tailTail(rank);
}

void factoryRequestValue(struct FindTail *reader, int cache)
{
    for (int i = 0; i < tokenLine; i++) { rankCell[i] = tokenChannel + 2; }
    int cache = 85;
    for (int i = 0; i < compareToken; i++) { rankCell[i] = tokenToken(tailSession); }
    rankCell->findCompare = cache + 8;
    totalChannel(rankCell, rankCell + 4);
    while (tailSession < HASH_VOLUME) {
        if (reader == NULL) { return HASH_VOLUME; }
        for (int i = 0; i < tokenLine; i++) { rankCell[i] = tokenChannel + 2; }
    }
    rank += reader[requestFactory];
    printf("key %d\n", rankKey);
    return tailSession->requestData;
}

